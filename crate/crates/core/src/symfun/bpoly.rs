//! Polynomials in the generators `b₁, b₂, …`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Basis, Ring, SymFn};
use crate::partition::Partition;
use crate::poly::MPoly;
use crate::{Error, Result};

/// `∏ b_i^{k_i}`, stored as `[k₁, k₂, …]` without trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BMonomial(Vec<u32>);

impl BMonomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        BMonomial(exps)
    }

    pub fn one() -> Self {
        BMonomial(Vec::new())
    }

    /// The generator `b_i`, `i ≥ 1`.
    pub fn generator(i: u32) -> Self {
        assert!(i >= 1, "generators are indexed from 1");
        let mut e = vec![0; i as usize];
        e[i as usize - 1] = 1;
        BMonomial(e)
    }

    /// `e_λ ↦ ∏ b_{λ_j}`.
    pub fn from_partition(lambda: &Partition) -> Self {
        let mut e = Vec::new();
        for &p in lambda.parts() {
            let i = p as usize - 1;
            if e.len() <= i {
                e.resize(i + 1, 0);
            }
            e[i] += 1;
        }
        BMonomial(e)
    }

    /// The partition `λ` with `self = ∏ b_{λ_j}`.
    pub fn to_partition(&self) -> Partition {
        Partition::from_multiset(
            self.0
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(i as u32 + 1, k as usize)),
        )
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: u32) -> u32 {
        match i {
            0 => 0,
            _ => self.0.get(i as usize - 1).copied().unwrap_or(0),
        }
    }

    /// `Σ 2·i·k_i`.
    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &k)| 2 * (i as u64 + 1) * u64::from(k))
            .sum()
    }

    pub fn mul(&self, other: &BMonomial) -> BMonomial {
        let n = self.0.len().max(other.0.len());
        BMonomial(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }
}

impl fmt::Display for BMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "b{}", i + 1)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial in the `b_i` over ℤ or ℤ/ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPoly {
    modulus: Option<u64>,
    terms: BTreeMap<BMonomial, BigInt>,
}

impl BPoly {
    pub fn zero(modulus: Option<u64>) -> Self {
        BPoly {
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(modulus: Option<u64>) -> Self {
        BPoly::monomial(modulus, BMonomial::one(), BigInt::one())
    }

    pub fn generator(modulus: Option<u64>, i: u32) -> Self {
        BPoly::monomial(modulus, BMonomial::generator(i), BigInt::one())
    }

    pub fn monomial(modulus: Option<u64>, m: BMonomial, c: BigInt) -> Self {
        let mut p = BPoly::zero(modulus);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        modulus: Option<u64>,
        terms: impl IntoIterator<Item = (BMonomial, BigInt)>,
    ) -> Self {
        let mut p = BPoly::zero(modulus);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn terms(&self) -> &BTreeMap<BMonomial, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, m: &BMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn reduce(&self, c: BigInt) -> BigInt {
        match self.modulus {
            Some(l) => c.mod_floor(&BigInt::from(l)),
            None => c,
        }
    }

    pub fn add_term(&mut self, m: BMonomial, c: BigInt) {
        let sum = self.reduce(self.coeff(&m) + c);
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    /// Reduce coefficients mod `l`.
    pub fn reduce_mod(&self, l: u64) -> BPoly {
        BPoly::from_terms(Some(l), self.terms.clone())
    }

    pub fn scale(&self, c: &BigInt) -> BPoly {
        BPoly::from_terms(
            self.modulus,
            self.terms.iter().map(|(m, v)| (m.clone(), v * c)),
        )
    }

    pub fn pow(&self, n: u32) -> BPoly {
        let mut acc = BPoly::one(self.modulus);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Weights of the stored monomials, without repeats.
    pub fn weights(&self) -> Vec<u64> {
        let mut w: Vec<u64> = self.terms.keys().map(BMonomial::weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn max_weight(&self) -> u64 {
        self.terms.keys().map(BMonomial::weight).max().unwrap_or(0)
    }

    /// Read an elementary-basis symmetric function with `e_s ↦ b_s`.
    pub fn from_elementary(f: &SymFn) -> Result<BPoly> {
        if f.basis() != Basis::Elementary {
            return Err(Error::Domain(format!(
                "expected elementary basis, got {:?}",
                f.basis()
            )));
        }
        let modulus = match f.ring() {
            Ring::ModPrime(l) => Some(l),
            _ => None,
        };
        let mut out = BPoly::zero(modulus);
        for (lambda, c) in f.terms() {
            if !c.is_integer() {
                return Err(Error::NotRepresentable {
                    value: c.to_string(),
                    ring: "ℤ".into(),
                });
            }
            out.add_term(BMonomial::from_partition(lambda), c.to_integer());
        }
        Ok(out)
    }

    /// The inverse of [`BPoly::from_elementary`].
    pub fn to_elementary(&self) -> SymFn {
        let ring = match self.modulus {
            Some(l) => Ring::ModPrime(l),
            None => Ring::Integer,
        };
        let mut out = SymFn::zero(Basis::Elementary, ring);
        for (m, c) in &self.terms {
            out.terms
                .insert(m.to_partition(), BigRational::from_integer(c.clone()));
        }
        out
    }

    /// Substitute `b_i ↦ values[i-1]`; generators beyond the slice map to 0.
    pub fn eval(&self, values: &[MPoly]) -> MPoly {
        let nvars = values.first().map(MPoly::nvars).unwrap_or(0);
        let mut out = MPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(nvars, c.clone());
            for (i, &k) in m.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match values.get(i) {
                    Some(v) => term = &term * &v.pow(k),
                    None => term = MPoly::zero(nvars),
                }
            }
            out = &out + &term;
        }
        out
    }

    fn check_same_ring(&self, other: &BPoly) {
        assert_eq!(self.modulus, other.modulus, "mixing coefficient rings");
    }
}

impl Add for &BPoly {
    type Output = BPoly;

    fn add(self, rhs: &BPoly) -> BPoly {
        self.check_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &BPoly {
    type Output = BPoly;

    fn neg(self) -> BPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &BPoly {
    type Output = BPoly;

    fn sub(self, rhs: &BPoly) -> BPoly {
        self + &(-rhs)
    }
}

impl Mul for &BPoly {
    type Output = BPoly;

    fn mul(self, rhs: &BPoly) -> BPoly {
        self.check_same_ring(rhs);
        let mut out = BPoly::zero(self.modulus);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Highest-weight terms first, e.g. `2*b1^3 + b1*b2 - 3*b3`.
impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&BMonomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.weight().cmp(&a.0.weight()).then_with(|| b.0.cmp(a.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == BMonomial::one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Parses sums of products such as `b1^2*b2 - 3*b3 + 2`, over ℤ.
impl FromStr for BPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse(format!("{s:?}: {msg}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty expression"));
        }
        let mut out = BPoly::zero(None);
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    1
                }
                b'-' => {
                    rest = &rest[1..];
                    -1
                }
                _ if first => 1,
                _ => return Err(err("expected + or -")),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let mut coeff = BigInt::from(sign);
            let mut mono = BMonomial::one();
            for factor in term.split('*') {
                if let Some(gen) = factor.strip_prefix('b') {
                    let (idx, exp) = match gen.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                        None => (gen, 1),
                    };
                    let idx: u32 = idx.parse().map_err(|_| err("bad generator index"))?;
                    if idx == 0 {
                        return Err(err("generators start at b1"));
                    }
                    let mut e = vec![0; idx as usize];
                    e[idx as usize - 1] = exp;
                    mono = mono.mul(&BMonomial::new(e));
                } else {
                    let c: BigInt = factor.parse().map_err(|_| err("bad coefficient"))?;
                    coeff *= c;
                }
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f: BPoly = "b1^2*b2 - 3*b3 + 2".parse().unwrap();
        assert_eq!(f.terms().len(), 3);
        assert_eq!(f.coeff(&BMonomial::new(vec![2, 1])), BigInt::from(1));
        assert_eq!(f.coeff(&BMonomial::generator(3)), BigInt::from(-3));
        assert_eq!(f.to_string(), "b1^2*b2 - 3*b3 + 2");
        let g: BPoly = f.to_string().parse().unwrap();
        assert_eq!(f, g);
        assert!("b0".parse::<BPoly>().is_err());
        assert!("b1 +".parse::<BPoly>().is_err());
        assert!("".parse::<BPoly>().is_err());
    }

    #[test]
    fn weights() {
        let m = BMonomial::new(vec![2, 1]);
        assert_eq!(m.weight(), 8);
        assert_eq!(BMonomial::generator(3).weight(), 6);
        assert_eq!(BMonomial::new(vec![1, 0, 0]), BMonomial::generator(1));
    }

    #[test]
    fn mod_arithmetic() {
        let b1 = BPoly::generator(Some(3), 1);
        let three = b1.scale(&BigInt::from(3));
        assert!(three.is_zero());
        let f = &(&b1 + &b1) * &b1;
        assert_eq!(f.to_string(), "2*b1^2");
        assert_eq!(b1.pow(3).terms().len(), 1);
    }

    #[test]
    fn partition_round_trip() {
        let lambda = Partition::new(vec![3, 1, 1]).unwrap();
        let m = BMonomial::from_partition(&lambda);
        assert_eq!(m.exponents(), &[2, 0, 1]);
        assert_eq!(m.to_partition(), lambda);
    }
}
