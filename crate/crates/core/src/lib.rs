//! Exact arithmetic for the characteristic numbers, valuation criteria and
//! Steenrod-operation bookkeeping behind the polynomial generators of the
//! η-completed symplectic cobordism ring.
//!
//! The crate is organised bottom-up:
//!
//! - [`valuation`]: ℓ-adic valuations, Legendre's formula, multinomials.
//! - [`partition`]: integer partitions with the even and ℓ-adic predicates.
//! - [`poly`]: a small sparse multivariate polynomial type used as an oracle.
//! - [`symfun`]: symmetric functions, the `u_ω ↔ b` dictionary, the diagonal
//!   and the dual `z_ω` classes.
//! - [`chow`]: truncated cohomology rings of products of projective spaces,
//!   Newton and Conner-Floyd classes of line-bundle sums.
//! - [`stong`]: the zero-locus construction `Y ⊂ X` and its s-numbers.
//! - [`steenrod`]: reduced power operations on `ℤ/ℓ[b₁, b₂, …]`.
//! - [`adams`]: rank and Poincaré-series identities on the Adams E₂ page.
//! - [`criterion`]: generator verdicts from characteristic numbers.

pub mod adams;
pub mod chow;
pub mod criterion;
mod error;
pub mod partition;
pub mod poly;
pub mod steenrod;
pub mod stong;
pub mod symfun;
pub mod valuation;

pub use error::{Error, Result};
pub use partition::Partition;

/// Process-wide cache behind a lock.
pub(crate) type Memo<K, V> = std::sync::OnceLock<std::sync::Mutex<std::collections::HashMap<K, V>>>;
