//! Symmetric functions in the monomial, elementary and power-sum bases.
//!
//! All conversions go through the monomial basis. Products `e_λ` and `p_λ`
//! are expanded there by repeated multiplication with a single `e_k` or
//! `p_k`, and the inverse direction is triangular elimination:
//!
//! - `e_{λ'} = m_λ + (lexicographically smaller terms)`, so eliminating the
//!   lex-largest monomial term first is integral;
//! - `p_λ = (∏ mult_i(λ)!) m_λ + (coarser, lex-larger terms)`, so
//!   eliminating the lex-smallest term first works over ℚ.
//!
//! Coefficients are stored as rationals and normalised into the tagged
//! [`Ring`] after every operation.

mod bpoly;
mod dual;

pub use bpoly::{BMonomial, BPoly};
pub use dual::{
    b_coproduct, diagonal, diagonal_in_b, pair_through_diagonal, u_to_b, u_to_b_capped,
    u_to_b_identity_holds, z_mul, BTensor, ZClass,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::partition::Partition;
use crate::poly::MPoly;
use crate::valuation::check_odd_prime;
use crate::{Error, Memo, Result};

/// Conversions reject symmetric functions of weight above this by default.
pub const DEFAULT_WEIGHT_CAP: u64 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Monomial,
    Elementary,
    PowerSum,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::Monomial, Basis::Elementary, Basis::PowerSum];

    fn symbol(self) -> char {
        match self {
            Basis::Monomial => 'm',
            Basis::Elementary => 'e',
            Basis::PowerSum => 'p',
        }
    }
}

/// Coefficient ring tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Integer,
    /// Needed for the power-sum basis, which is not a ℤ-basis.
    Rational,
    ModPrime(u64),
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integer => write!(f, "ℤ"),
            Ring::Rational => write!(f, "ℚ"),
            Ring::ModPrime(l) => write!(f, "ℤ/{l}"),
        }
    }
}

impl Ring {
    fn check(self) -> Result<()> {
        match self {
            Ring::ModPrime(l) => check_odd_prime(l),
            _ => Ok(()),
        }
    }

    /// Maps a rational into this ring; `None` for zero.
    pub(crate) fn normalize(self, q: &BigRational) -> Result<Option<BigRational>> {
        let out = match self {
            Ring::Rational => q.clone(),
            Ring::Integer => {
                if !q.is_integer() {
                    return Err(Error::NotRepresentable {
                        value: q.to_string(),
                        ring: self.to_string(),
                    });
                }
                q.clone()
            }
            Ring::ModPrime(l) => {
                let l = BigInt::from(l);
                let den = q.denom().mod_floor(&l);
                if den.is_zero() {
                    return Err(Error::NotRepresentable {
                        value: q.to_string(),
                        ring: self.to_string(),
                    });
                }
                let inv = den.modpow(&(&l - BigInt::from(2)), &l);
                BigRational::from_integer((q.numer() * inv).mod_floor(&l))
            }
        };
        Ok((!out.is_zero()).then_some(out))
    }
}

/// A finite linear combination of basis symmetric functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFn {
    basis: Basis,
    ring: Ring,
    terms: BTreeMap<Partition, BigRational>,
}

impl SymFn {
    pub fn zero(basis: Basis, ring: Ring) -> Self {
        SymFn {
            basis,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, ring: Ring, lambda: Partition) -> Self {
        let mut f = SymFn::zero(basis, ring);
        f.terms.insert(lambda, BigRational::one());
        f
    }

    pub fn from_terms(
        basis: Basis,
        ring: Ring,
        terms: impl IntoIterator<Item = (Partition, BigInt)>,
    ) -> Result<Self> {
        ring.check()?;
        let mut f = SymFn::zero(basis, ring);
        for (lambda, c) in terms {
            f.add_term(lambda, &BigRational::from_integer(c))?;
        }
        Ok(f)
    }

    fn add_term(&mut self, lambda: Partition, c: &BigRational) -> Result<()> {
        let sum = self.terms.get(&lambda).cloned().unwrap_or_default() + c;
        match self.ring.normalize(&sum)? {
            Some(v) => {
                self.terms.insert(lambda, v);
            }
            None => {
                self.terms.remove(&lambda);
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> BigRational {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> u64 {
        self.terms.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn add(&self, other: &SymFn) -> Result<SymFn> {
        if self.basis != other.basis || self.ring != other.ring {
            return Err(Error::Domain(format!(
                "cannot add {:?}/{} to {:?}/{}",
                self.basis, self.ring, other.basis, other.ring
            )));
        }
        let mut out = self.clone();
        for (lambda, c) in &other.terms {
            out.add_term(lambda.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Result<SymFn> {
        let mut out = SymFn::zero(self.basis, self.ring);
        for (lambda, v) in &self.terms {
            out.add_term(lambda.clone(), &(v * c))?;
        }
        Ok(out)
    }

    /// Re-tag the coefficients into another ring.
    pub fn with_ring(&self, ring: Ring) -> Result<SymFn> {
        ring.check()?;
        let mut out = SymFn::zero(self.basis, ring);
        for (lambda, c) in &self.terms {
            out.add_term(lambda.clone(), c)?;
        }
        Ok(out)
    }

    pub fn convert(&self, target: Basis) -> Result<SymFn> {
        self.convert_capped(target, DEFAULT_WEIGHT_CAP)
    }

    pub fn convert_capped(&self, target: Basis, cap: u64) -> Result<SymFn> {
        let weight = self.max_weight();
        if weight > cap {
            return Err(Error::WeightCapExceeded { weight, cap });
        }
        if target == self.basis {
            return Ok(self.clone());
        }
        let monomial = self.to_monomial_terms();
        let mut out = SymFn::zero(target, self.ring);
        for (lambda, c) in &monomial {
            if c.is_zero() {
                continue;
            }
            match target {
                Basis::Monomial => out.add_term(lambda.clone(), c)?,
                Basis::Elementary => {
                    for (mu, v) in monomial_in_elementary(lambda).iter() {
                        out.add_term(mu.clone(), &(c * BigRational::from_integer(v.clone())))?;
                    }
                }
                Basis::PowerSum => {
                    for (mu, v) in monomial_in_power_sum(lambda).iter() {
                        out.add_term(mu.clone(), &(c * v))?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact monomial-basis coordinates, before ring normalisation.
    fn to_monomial_terms(&self) -> BTreeMap<Partition, BigRational> {
        let mut acc: BTreeMap<Partition, BigRational> = BTreeMap::new();
        for (lambda, c) in &self.terms {
            match self.basis {
                Basis::Monomial => *acc.entry(lambda.clone()).or_default() += c,
                Basis::Elementary | Basis::PowerSum => {
                    for (mu, v) in product_in_monomial(self.basis, lambda).iter() {
                        *acc.entry(mu.clone()).or_default() +=
                            c * BigRational::from_integer(v.clone());
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    }
}

impl fmt::Display for SymFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = self.basis.symbol();
        for (k, (lambda, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{sym}{lambda}")?;
        }
        Ok(())
    }
}

type MonomialExpansion = BTreeMap<Partition, BigInt>;

/// `e_λ` or `p_λ` in the monomial basis.
fn product_in_monomial(basis: Basis, lambda: &Partition) -> Arc<MonomialExpansion> {
    static CACHE: Memo<(Basis, Partition), Arc<MonomialExpansion>> = Memo::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (basis, lambda.clone());
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let mut acc: MonomialExpansion = BTreeMap::from([(Partition::empty(), BigInt::one())]);
    for &k in lambda.parts() {
        acc = match basis {
            Basis::Elementary => mul_by_elementary(&acc, k),
            Basis::PowerSum => mul_by_power_sum(&acc, k),
            Basis::Monomial => unreachable!("monomial products are not needed"),
        };
    }
    let acc = Arc::new(acc);
    cache.lock().unwrap().insert(key, acc.clone());
    acc
}

/// `m_λ` in the elementary basis (always integral).
fn monomial_in_elementary(lambda: &Partition) -> Arc<MonomialExpansion> {
    static CACHE: Memo<Partition, Arc<MonomialExpansion>> = Memo::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(lambda) {
        return hit.clone();
    }
    let mut rem: MonomialExpansion = BTreeMap::from([(lambda.clone(), BigInt::one())]);
    let mut out = MonomialExpansion::new();
    while let Some((mu, c)) = rem.pop_last() {
        let conj = mu.conjugate();
        for (nu, v) in product_in_monomial(Basis::Elementary, &conj).iter() {
            if *nu == mu {
                continue;
            }
            let entry = rem.entry(nu.clone()).or_default();
            *entry -= &c * v;
            if entry.is_zero() {
                rem.remove(nu);
            }
        }
        out.insert(conj, c);
    }
    let out = Arc::new(out);
    cache.lock().unwrap().insert(lambda.clone(), out.clone());
    out
}

/// `m_λ` in the power-sum basis (rational in general).
fn monomial_in_power_sum(lambda: &Partition) -> Arc<BTreeMap<Partition, BigRational>> {
    static CACHE: Memo<Partition, Arc<BTreeMap<Partition, BigRational>>> = Memo::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(lambda) {
        return hit.clone();
    }
    let mut rem: BTreeMap<Partition, BigRational> =
        BTreeMap::from([(lambda.clone(), BigRational::one())]);
    let mut out = BTreeMap::new();
    while let Some((mu, c)) = rem.pop_first() {
        let expansion = product_in_monomial(Basis::PowerSum, &mu);
        let lead = BigRational::from_integer(expansion[&mu].clone());
        let q = c / lead;
        for (nu, v) in expansion.iter() {
            if *nu == mu {
                continue;
            }
            let entry = rem.entry(nu.clone()).or_default();
            *entry -= &q * BigRational::from_integer(v.clone());
            if entry.is_zero() {
                rem.remove(nu);
            }
        }
        out.insert(mu, q);
    }
    let out = Arc::new(out);
    cache.lock().unwrap().insert(lambda.clone(), out.clone());
    out
}

/// Value → multiplicity over the positive parts.
fn value_classes(mu: &Partition) -> Vec<(u32, usize)> {
    mu.multiplicities().into_iter().rev().collect()
}

/// Multiply a monomial-basis expansion by `e_k`.
///
/// The coefficient of `x^μ` in `m_λ · e_k` is the number of 0/1 vectors
/// `β ≤ μ` with `|β| = k` such that `μ − β` is a rearrangement of `λ`.
fn mul_by_elementary(f: &MonomialExpansion, k: u32) -> MonomialExpansion {
    let mut out = MonomialExpansion::new();
    for (lambda, c) in f {
        for mu in add_vertical_strips(lambda, k) {
            let coeff = strip_count(&mu, lambda, k);
            if !coeff.is_zero() {
                *out.entry(mu).or_default() += c * coeff;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Distinct partitions obtained by adding one to `k` distinct positions of
/// `λ` padded with `k` zeros.
fn add_vertical_strips(lambda: &Partition, k: u32) -> Vec<Partition> {
    let mut classes: Vec<(u32, usize)> = lambda.multiplicities().into_iter().collect();
    classes.push((0, k as usize));
    let mut results = Vec::new();
    fn go(
        classes: &[(u32, usize)],
        idx: usize,
        left: usize,
        acc: &mut Vec<u32>,
        results: &mut Vec<Partition>,
    ) {
        if idx == classes.len() {
            if left == 0 {
                results.push(Partition::from_multiset(acc.iter().copied()));
            }
            return;
        }
        let (v, m) = classes[idx];
        for a in 0..=m.min(left) {
            let before = acc.len();
            acc.extend(std::iter::repeat_n(v + 1, a));
            acc.extend(std::iter::repeat_n(v, m - a));
            go(classes, idx + 1, left - a, acc, results);
            acc.truncate(before);
        }
    }
    go(&classes, 0, k as usize, &mut Vec::new(), &mut results);
    results.sort();
    results.dedup();
    results
}

fn strip_count(mu: &Partition, lambda: &Partition, k: u32) -> BigInt {
    let classes = value_classes(mu);
    let mut total = BigInt::zero();
    fn go(
        classes: &[(u32, usize)],
        idx: usize,
        left: usize,
        acc: &mut Vec<u32>,
        weight: BigInt,
        lambda: &Partition,
        total: &mut BigInt,
    ) {
        if idx == classes.len() {
            if left == 0 && Partition::from_multiset(acc.iter().copied()) == *lambda {
                *total += weight;
            }
            return;
        }
        let (w, m) = classes[idx];
        for b in 0..=m.min(left) {
            let before = acc.len();
            acc.extend(std::iter::repeat_n(w - 1, b));
            acc.extend(std::iter::repeat_n(w, m - b));
            let factor = BigInt::from(crate::valuation::binomial(m as u64, b as u64));
            go(
                classes,
                idx + 1,
                left - b,
                acc,
                &weight * factor,
                lambda,
                total,
            );
            acc.truncate(before);
        }
    }
    go(
        &classes,
        0,
        k as usize,
        &mut Vec::new(),
        BigInt::one(),
        lambda,
        &mut total,
    );
    total
}

/// Multiply a monomial-basis expansion by `p_k`.
///
/// The coefficient of `x^μ` in `m_λ · p_k` counts positions `i` with
/// `μ_i ≥ k` such that lowering `μ_i` by `k` gives a rearrangement of `λ`.
fn mul_by_power_sum(f: &MonomialExpansion, k: u32) -> MonomialExpansion {
    let mut out = MonomialExpansion::new();
    for (lambda, c) in f {
        let mut candidates: Vec<Partition> = lambda
            .multiplicities()
            .keys()
            .map(|&v| {
                let mut parts = lambda.parts().to_vec();
                let pos = parts.iter().position(|&p| p == v).unwrap();
                parts[pos] += k;
                Partition::from_multiset(parts)
            })
            .collect();
        candidates.push(lambda.concat(&Partition::single(k)));
        candidates.sort();
        candidates.dedup();
        for mu in candidates {
            let mut coeff = 0usize;
            for (w, m) in value_classes(&mu) {
                if w < k {
                    continue;
                }
                let mut parts = mu.parts().to_vec();
                let pos = parts.iter().position(|&p| p == w).unwrap();
                parts[pos] -= k;
                if Partition::from_multiset(parts) == *lambda {
                    coeff += m;
                }
            }
            *out.entry(mu).or_default() += c * BigInt::from(coeff);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Distinct rearrangements of `exps` (any order in, sorted order out).
pub(crate) fn distinct_permutations(exps: &[u32]) -> Vec<Vec<u32>> {
    let mut v = exps.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // lexicographic next permutation
    loop {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return out;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
}

/// Evaluate `f` on the variables `t₁, …, t_k`. Partitions with more than `k`
/// parts contribute zero.
pub fn expand_in_vars(f: &SymFn, k: usize) -> Result<MPoly> {
    let mut out = MPoly::zero(k);
    for (lambda, c) in f.to_monomial_terms() {
        if lambda.len() > k {
            continue;
        }
        let c = match f.ring.normalize(&c)? {
            Some(c) if c.is_integer() => c.to_integer(),
            Some(c) => {
                return Err(Error::NotRepresentable {
                    value: c.to_string(),
                    ring: "ℤ".into(),
                });
            }
            None => continue,
        };
        let mut padded = lambda.parts().to_vec();
        padded.resize(k, 0);
        for perm in distinct_permutations(&padded) {
            out.add_term(perm, c.clone());
        }
    }
    Ok(out)
}
