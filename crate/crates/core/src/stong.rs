//! The varieties `X_{2d+2}`, their characteristic numbers `s_{2d}`, and the
//! ℓ-adic valuation table.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::chow::{alpha, newton_class, tangent_bundle, ChowClass, ProjProduct, VirtualBundle};
use crate::valuation::{
    check_odd_prime, ladic_digits, multinomial, nu, nu_multinomial, power_minus_one_exponent,
};
use crate::{Error, Result};

/// Brute-force expansion is refused above this total dimension by default.
pub const DEFAULT_BRUTEFORCE_CAP: u64 = 14;

/// `Some(r)` when `2d = ℓʳ − 1`.
pub fn exceptional_exponent(d: u64, l: u64) -> Option<u32> {
    power_minus_one_exponent(2 * d, l)
}

/// `X_{2d+2}`: `ℙ¹ × (ℙ^{ℓ^{r−1}})^ℓ` when `2d = ℓʳ − 1`, otherwise `a_i`
/// copies of `ℙ^{ℓ^i}` for the base-ℓ digits `a_i` of `2d + 2`.
pub fn build_x(d: u64, l: u64) -> Result<ProjProduct> {
    check_odd_prime(l)?;
    if d == 0 {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    let too_big = || Error::Domain(format!("factor dimensions overflow for d={d}, ℓ={l}"));
    let dims = match exceptional_exponent(d, l) {
        Some(r) => {
            let big = u32::try_from(l.pow(r - 1)).map_err(|_| too_big())?;
            std::iter::once(1)
                .chain(std::iter::repeat_n(big, l as usize))
                .collect()
        }
        None => {
            let mut dims = Vec::new();
            let mut power: u64 = 1;
            for &a in ladic_digits(2 * d + 2, l).digits() {
                let dim = u32::try_from(power).map_err(|_| too_big())?;
                dims.extend(std::iter::repeat_n(dim, a as usize));
                power = power.saturating_mul(l);
            }
            dims
        }
    };
    ProjProduct::new(dims)
}

fn check_symplectic_shape(x: &ProjProduct) -> Result<()> {
    let dims = x.dims();
    let reason = if dims.iter().any(|n| n % 2 == 0) {
        "every factor must be odd-dimensional"
    } else if !dims.len().is_multiple_of(2) {
        "the number of factors must be even"
    } else {
        return Ok(());
    };
    Err(Error::InvalidConstruction {
        dims: dims.to_vec(),
        reason: reason.into(),
    })
}

fn dims_u64(x: &ProjProduct) -> Vec<u64> {
    x.dims().iter().map(|&n| u64::from(n)).collect()
}

/// `−2 · multinomial(2d+2; n₁, …, n_m)`.
pub fn s_number(x: &ProjProduct) -> Result<BigInt> {
    check_symplectic_shape(x)?;
    let m = multinomial(x.total_dim(), &dims_u64(x))?;
    Ok(-BigInt::from(2) * BigInt::from(m))
}

/// `−2 · deg(α^{2d+2})` by repeated multiplication in the Chow ring.
pub fn s_number_bruteforce(x: &ProjProduct) -> Result<BigInt> {
    s_number_bruteforce_capped(x, DEFAULT_BRUTEFORCE_CAP)
}

pub fn s_number_bruteforce_capped(x: &ProjProduct, cap: u64) -> Result<BigInt> {
    check_symplectic_shape(x)?;
    let dim = x.total_dim();
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    let a = alpha(x);
    let mut acc = ChowClass::one(x);
    for _ in 0..dim {
        acc = acc.mul(&a)?;
    }
    Ok(-BigInt::from(2) * acc.deg())
}

/// `1 + Σ (n_i + 1)` with the factors written as `ℙ^{2n_i+1}`.
pub fn n_y(x: &ProjProduct) -> u64 {
    1 + x
        .dims()
        .iter()
        .map(|&n| u64::from(n).div_ceil(2))
        .sum::<u64>()
}

/// `(−1)^{n_Y} · deg(α² · c_{(2d)}(ξ ⊕ ξ − T_X))`, computed in the Chow ring
/// of `X`.
///
/// For the varieties produced by [`build_x`] this equals
/// `(−1)^{n_Y+1} · s_number(X)`. On products with a factor of dimension at
/// least `2d` the tangent term contributes and the two differ.
pub fn signed_char_number(x: &ProjProduct) -> Result<BigInt> {
    check_symplectic_shape(x)?;
    let n = (x.total_dim() - 2) as u32;
    if n == 0 {
        return Err(Error::Domain(
            "signed characteristic number needs d ≥ 1".into(),
        ));
    }
    let ones = vec![1i64; x.factors()];
    let mut v = VirtualBundle::line(x, ones.clone())?;
    v.push(1, ones)?;
    let v = v.concat(&tangent_bundle(x).negate())?;
    let a = alpha(x);
    let degree = a.pow(2).mul(&newton_class(&v, n)?)?.deg();
    Ok(if n_y(x).is_multiple_of(2) {
        degree
    } else {
        -degree
    })
}

/// `deg(2α^{2d+2}) mod ℓ` against `2 ∏ a_i! mod ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Congruence {
    pub lhs: u64,
    pub rhs: u64,
    pub equal: bool,
}

pub fn congruence_check(d: u64, l: u64) -> Result<Congruence> {
    check_odd_prime(l)?;
    if exceptional_exponent(d, l).is_some() {
        return Err(Error::Domain(format!(
            "2d = {} is of the form ℓʳ−1 for ℓ={l}",
            2 * d
        )));
    }
    let x = build_x(d, l)?;
    let lb = BigInt::from(l);
    let deg = BigInt::from(multinomial(x.total_dim(), &dims_u64(&x))?);
    let lhs = (BigInt::from(2) * deg) % &lb;
    let mut rhs = BigInt::from(2);
    for &a in ladic_digits(2 * d + 2, l).digits() {
        for k in 2..=a {
            rhs *= k;
        }
    }
    let rhs = rhs % &lb;
    let to_u64 = |v: BigInt| u64::try_from(v).expect("residue fits");
    let (lhs, rhs) = (to_u64(lhs), to_u64(rhs));
    Ok(Congruence {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StongDatum {
    pub prime: u64,
    pub d: u64,
    pub factors: ProjProduct,
    pub s_number: BigInt,
    pub valuation: u64,
    pub n_y: u64,
    /// 1 when `2d = ℓʳ − 1`, else 0.
    pub expected: u64,
}

impl StongDatum {
    pub fn matches(&self) -> bool {
        self.valuation == self.expected
    }
}

pub fn stong_datum(d: u64, l: u64) -> Result<StongDatum> {
    let x = build_x(d, l)?;
    let s = s_number(&x)?;
    let valuation = nu_multinomial(x.total_dim(), &dims_u64(&x), l)?;
    Ok(StongDatum {
        prime: l,
        d,
        n_y: n_y(&x),
        expected: u64::from(exceptional_exponent(d, l).is_some()),
        factors: x,
        s_number: s,
        valuation,
    })
}

/// Data for `d = 1, …, d_max`, in order of `d`.
pub fn valuation_table(l: u64, d_max: u64) -> Result<Vec<StongDatum>> {
    check_odd_prime(l)?;
    if d_max == 0 {
        return Err(Error::Domain("the generator family starts at d = 1".into()));
    }
    (1..=d_max)
        .into_par_iter()
        .map(|d| stong_datum(d, l))
        .collect()
}

/// `ν_ℓ(|s|)` via factorisation of the big integer; the table uses Legendre.
pub fn valuation_by_factoring(s: &BigInt, l: u64) -> Result<u32> {
    if s.is_zero() {
        return Err(Error::ZeroValuation);
    }
    nu(s, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(dims: &[u32]) -> ProjProduct {
        ProjProduct::new(dims.to_vec()).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(build_x(1, 3).unwrap(), space(&[1, 1, 1, 1]));
        assert_eq!(build_x(2, 3).unwrap(), space(&[3, 3]));
        assert_eq!(build_x(4, 3).unwrap(), space(&[1, 3, 3, 3]));
        assert_eq!(build_x(3, 3).unwrap(), space(&[1, 1, 3, 3]));
        assert_eq!(build_x(2, 5).unwrap(), space(&[1; 6]));
        assert!(build_x(0, 3).is_err());
        assert!(build_x(1, 9).is_err());
    }

    #[test]
    fn s_examples() {
        assert_eq!(s_number(&space(&[1, 1, 1, 1])).unwrap(), BigInt::from(-48));
        assert_eq!(s_number(&space(&[3, 3])).unwrap(), BigInt::from(-40));
        assert_eq!(
            s_number(&space(&[1, 3, 3, 3])).unwrap(),
            BigInt::from(-33600)
        );
        assert_eq!(
            s_number_bruteforce(&space(&[1, 1])).unwrap(),
            BigInt::from(-4)
        );
        assert_eq!(
            s_number_bruteforce(&space(&[3, 3])).unwrap(),
            BigInt::from(-40)
        );
        assert!(matches!(
            s_number(&space(&[2, 2])),
            Err(Error::InvalidConstruction { .. })
        ));
        assert!(matches!(
            s_number(&space(&[1, 1, 1])),
            Err(Error::InvalidConstruction { .. })
        ));
        assert!(matches!(
            s_number_bruteforce(&space(&[1; 16])),
            Err(Error::CapExceeded { dim: 16, cap: 14 })
        ));
    }

    #[test]
    fn signed_examples() {
        let x = space(&[1, 1, 1, 1]);
        assert_eq!(n_y(&x), 5);
        assert_eq!(signed_char_number(&x).unwrap(), BigInt::from(-48));
        assert_eq!(
            signed_char_number(&space(&[3, 3])).unwrap().magnitude(),
            &40u32.into()
        );
        // a factor of dimension ≥ 2d breaks the identity
        let x = space(&[1, 3]);
        assert_eq!(signed_char_number(&x).unwrap(), BigInt::zero());
    }

    #[test]
    fn congruence_examples() {
        assert_eq!(
            congruence_check(2, 3).unwrap(),
            Congruence {
                lhs: 1,
                rhs: 1,
                equal: true
            }
        );
        let c = congruence_check(3, 3).unwrap();
        assert_eq!(c.rhs, 2);
        assert!(c.equal);
        assert!(congruence_check(1, 3).is_err());
    }

    #[test]
    fn table_examples() {
        let t = valuation_table(3, 1).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].s_number, BigInt::from(-48));
        assert_eq!(t[0].valuation, 1);
        let t = valuation_table(3, 2).unwrap();
        assert_eq!(
            (t[1].s_number.clone(), t[1].valuation),
            (BigInt::from(-40), 0)
        );
        let t = valuation_table(5, 2).unwrap();
        assert_eq!(t[1].factors, space(&[1; 6]));
        assert_eq!(t[1].s_number, BigInt::from(-1440));
        assert_eq!(t[1].valuation, 1);
        assert!(valuation_table(3, 0).is_err());
    }
}
