use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the valuation of zero is undefined")]
    ZeroValuation,

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("parts sum to {sum}, expected {expected}")]
    PartsMismatch { expected: u64, sum: u64 },

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),

    #[error("partition {0} is not even")]
    NotEven(String),

    #[error("partition {partition} is {prime}-adic")]
    LadicPartition { partition: String, prime: u64 },

    #[error("weight {weight} exceeds the configured cap {cap}")]
    WeightCapExceeded { weight: u64, cap: u64 },

    #[error("classes live on different ambient spaces: {0:?} vs {1:?}")]
    AmbientMismatch(Vec<u32>, Vec<u32>),

    #[error("invalid projective product {dims:?}: {reason}")]
    InvalidConstruction { dims: Vec<u32>, reason: String },

    #[error("total dimension {dim} exceeds the brute-force cap {cap}")]
    CapExceeded { dim: u64, cap: u64 },

    #[error("{0}")]
    Domain(String),

    #[error("{roots} roots is below the stability bound {bound}")]
    RootsBelowBound { roots: usize, bound: usize },

    #[error("coefficient {value} is not representable over {ring}")]
    NotRepresentable { value: String, ring: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal fault: {0}")]
    Internal(String),
}
