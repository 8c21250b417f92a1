//! Cohomology of products of projective spaces, `ℤ[α₁,…,α_m]/(α_i^{n_i+1})`,
//! with sums of line bundles and their characteristic classes under the
//! additive formal group law.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::partition::Partition;
use crate::valuation::multinomial;
use crate::{Error, Result};

/// `ℙ^{n₁} × ⋯ × ℙ^{n_m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjProduct {
    dims: Vec<u32>,
}

impl ProjProduct {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidConstruction {
                dims,
                reason: "need at least one factor, each of positive dimension".into(),
            });
        }
        Ok(ProjProduct { dims })
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> u64 {
        self.dims.iter().map(|&n| u64::from(n)).sum()
    }
}

impl fmt::Display for ProjProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            write!(f, "P{n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    ambient: ProjProduct,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl ChowClass {
    pub fn zero(x: &ProjProduct) -> Self {
        ChowClass {
            ambient: x.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(x: &ProjProduct, c: BigInt) -> Self {
        let mut out = ChowClass::zero(x);
        out.add_term(vec![0; x.factors()], c);
        out
    }

    pub fn one(x: &ProjProduct) -> Self {
        ChowClass::constant(x, BigInt::one())
    }

    /// The monomial `∏ α_i^{e_i}`, or zero if some `e_i > n_i`.
    pub fn monomial(x: &ProjProduct, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != x.factors() {
            return Err(Error::AmbientMismatch(x.dims.clone(), exps));
        }
        let mut out = ChowClass::zero(x);
        out.add_term(exps, BigInt::one());
        Ok(out)
    }

    /// `Σ c_j α_j`, the first Chern class of `𝒪(c)`.
    pub fn linear(x: &ProjProduct, twist: &[i64]) -> Result<Self> {
        if twist.len() != x.factors() {
            return Err(Error::AmbientMismatch(
                x.dims.clone(),
                twist.iter().map(|&c| c.unsigned_abs() as u32).collect(),
            ));
        }
        let mut out = ChowClass::zero(x);
        for (j, &c) in twist.iter().enumerate() {
            let mut e = vec![0; x.factors()];
            e[j] = 1;
            out.add_term(e, BigInt::from(c));
        }
        Ok(out)
    }

    pub fn ambient(&self) -> &ProjProduct {
        &self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() || exps.iter().zip(&self.ambient.dims).any(|(e, n)| e > n) {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    fn check_ambient(&self, other: &ChowClass) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(
                self.ambient.dims.clone(),
                other.ambient.dims.clone(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> ChowClass {
        let mut out = ChowClass::zero(&self.ambient);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> ChowClass {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_ambient(other)?;
        let mut out = ChowClass::zero(&self.ambient);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> ChowClass {
        if let Some(twist) = self.as_linear() {
            return linear_pow(&self.ambient, &twist, n);
        }
        let mut acc = ChowClass::one(&self.ambient);
        for _ in 0..n {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    /// The twist vector when this class is homogeneous linear.
    fn as_linear(&self) -> Option<Vec<BigInt>> {
        let mut twist = vec![BigInt::zero(); self.ambient.factors()];
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() != 1 {
                return None;
            }
            let j = e.iter().position(|&x| x == 1)?;
            twist[j] = c.clone();
        }
        Some(twist)
    }

    /// Coefficient of the top monomial `∏ α_i^{n_i}`.
    pub fn deg(&self) -> BigInt {
        self.coeff(&self.ambient.dims)
    }

    /// The homogeneous part of total degree `k`.
    pub fn degree_part(&self, k: u32) -> ChowClass {
        ChowClass {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

/// `(Σ c_j α_j)^n`, expanded directly by the multinomial theorem over the
/// exponent vectors that survive truncation.
fn linear_pow(x: &ProjProduct, twist: &[BigInt], n: u32) -> ChowClass {
    let mut out = ChowClass::zero(x);
    let dims = x.dims();
    let mut suffix_cap = vec![0u64; dims.len() + 1];
    for j in (0..dims.len()).rev() {
        suffix_cap[j] = suffix_cap[j + 1]
            + if twist[j].is_zero() {
                0
            } else {
                u64::from(dims[j])
            };
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        j: usize,
        left: u32,
        dims: &[u32],
        twist: &[BigInt],
        suffix_cap: &[u64],
        exps: &mut Vec<u32>,
        coeff: BigInt,
        total: u32,
        out: &mut ChowClass,
    ) {
        if u64::from(left) > suffix_cap[j] {
            return;
        }
        if j == dims.len() {
            let parts: Vec<u64> = exps.iter().map(|&e| u64::from(e)).collect();
            let m = BigInt::from(multinomial(u64::from(total), &parts).unwrap());
            out.add_term(exps.clone(), m * coeff);
            return;
        }
        let top = if twist[j].is_zero() {
            0
        } else {
            dims[j].min(left)
        };
        for e in 0..=top {
            exps.push(e);
            let c = &coeff * twist[j].pow(e);
            go(
                j + 1,
                left - e,
                dims,
                twist,
                suffix_cap,
                exps,
                c,
                total,
                out,
            );
            exps.pop();
        }
    }
    go(
        0,
        n,
        dims,
        twist,
        &suffix_cap,
        &mut Vec::new(),
        BigInt::one(),
        n,
        &mut out,
    );
    out
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*a{}", i + 1)?,
                    _ => write!(f, "*a{}^{x}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// `c₁(𝒪(1,…,1)) = Σ α_i`.
pub fn alpha(x: &ProjProduct) -> ChowClass {
    ChowClass::linear(x, &vec![1; x.factors()]).expect("twist length matches")
}

/// A signed sum of line bundles `±𝒪(c₁,…,c_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualBundle {
    ambient: ProjProduct,
    terms: Vec<(i8, Vec<i64>)>,
}

impl VirtualBundle {
    pub fn zero(x: &ProjProduct) -> Self {
        VirtualBundle {
            ambient: x.clone(),
            terms: Vec::new(),
        }
    }

    pub fn line(x: &ProjProduct, twist: Vec<i64>) -> Result<Self> {
        let mut v = VirtualBundle::zero(x);
        v.push(1, twist)?;
        Ok(v)
    }

    /// `n` copies of `𝒪`.
    pub fn trivial(x: &ProjProduct, n: usize) -> Self {
        VirtualBundle {
            ambient: x.clone(),
            terms: vec![(1, vec![0; x.factors()]); n],
        }
    }

    pub fn push(&mut self, sign: i8, twist: Vec<i64>) -> Result<()> {
        if twist.len() != self.ambient.factors() {
            return Err(Error::AmbientMismatch(
                self.ambient.dims.clone(),
                twist.iter().map(|&c| c.unsigned_abs() as u32).collect(),
            ));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Domain(format!("bundle sign must be ±1, got {sign}")));
        }
        self.terms.push((sign, twist));
        Ok(())
    }

    pub fn ambient(&self) -> &ProjProduct {
        &self.ambient
    }

    pub fn terms(&self) -> &[(i8, Vec<i64>)] {
        &self.terms
    }

    pub fn rank(&self) -> i64 {
        self.terms.iter().map(|(s, _)| i64::from(*s)).sum()
    }

    /// Direct sum: the concatenated term list.
    pub fn concat(&self, other: &VirtualBundle) -> Result<VirtualBundle> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(
                self.ambient.dims.clone(),
                other.ambient.dims.clone(),
            ));
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    /// The additive inverse in `K₀`.
    pub fn negate(&self) -> VirtualBundle {
        VirtualBundle {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(s, c)| (-s, c.clone())).collect(),
        }
    }

    pub fn dual(&self) -> VirtualBundle {
        VirtualBundle {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (*s, c.iter().map(|x| -x).collect()))
                .collect(),
        }
    }
}

/// From the Euler sequences: `Σ_i ((n_i+1)·𝒪(e_i) − 𝒪)`.
pub fn tangent_bundle(x: &ProjProduct) -> VirtualBundle {
    let m = x.factors();
    let mut v = VirtualBundle::zero(x);
    for (i, &n) in x.dims().iter().enumerate() {
        let mut e = vec![0; m];
        e[i] = 1;
        for _ in 0..=n {
            v.terms.push((1, e.clone()));
        }
        v.terms.push((-1, vec![0; m]));
    }
    v
}

/// `c_{(n)}(v) = Σ sign · (Σ c_j α_j)^n`.
pub fn newton_class(v: &VirtualBundle, n: u32) -> Result<ChowClass> {
    if n == 0 {
        return Err(Error::Domain("Newton classes are indexed from 1".into()));
    }
    let x = &v.ambient;
    let mut out = ChowClass::zero(x);
    for (sign, twist) in &v.terms {
        let t: Vec<BigInt> = twist.iter().map(|&c| BigInt::from(c)).collect();
        if t.iter().all(Zero::is_zero) {
            continue;
        }
        out = out.add(&linear_pow(x, &t, n).scale(&BigInt::from(*sign)))?;
    }
    Ok(out)
}

/// A truncated series `Σ_I c_I t_I` with `t_I t_J = t_{I ∪ J}`, kept up to
/// total t-degree `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfSeries {
    ambient: ProjProduct,
    max_degree: u64,
    terms: BTreeMap<Partition, ChowClass>,
}

impl CfSeries {
    pub fn one(x: &ProjProduct, max_degree: u64) -> Self {
        CfSeries {
            ambient: x.clone(),
            max_degree,
            terms: BTreeMap::from([(Partition::empty(), ChowClass::one(x))]),
        }
    }

    /// `Σ_j r^j t_{(j)}` for a single Chern root `r`.
    pub fn of_root(root: &ChowClass, max_degree: u64) -> Self {
        let x = root.ambient().clone();
        let mut s = CfSeries::one(&x, max_degree);
        let mut power = ChowClass::one(&x);
        for j in 1..=max_degree {
            power = power.mul(root).expect("same ambient");
            if power.is_zero() {
                break;
            }
            s.terms.insert(Partition::single(j as u32), power.clone());
        }
        s
    }

    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, ChowClass> {
        &self.terms
    }

    pub fn coeff(&self, i: &Partition) -> ChowClass {
        self.terms
            .get(i)
            .cloned()
            .unwrap_or_else(|| ChowClass::zero(&self.ambient))
    }

    fn insert_add(&mut self, i: Partition, c: ChowClass) {
        if c.is_zero() || i.weight() > self.max_degree {
            return;
        }
        let sum = match self.terms.remove(&i) {
            Some(prev) => prev.add(&c).expect("same ambient"),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(i, sum);
        }
    }

    pub fn mul(&self, other: &CfSeries) -> Result<CfSeries> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(
                self.ambient.dims.clone(),
                other.ambient.dims.clone(),
            ));
        }
        let max_degree = self.max_degree.min(other.max_degree);
        let mut out = CfSeries {
            ambient: self.ambient.clone(),
            max_degree,
            terms: BTreeMap::new(),
        };
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if i.weight() + j.weight() > max_degree {
                    continue;
                }
                out.insert_add(i.concat(j), a.mul(b)?);
            }
        }
        Ok(out)
    }

    /// The inverse of a series with constant term 1, as `Σ_k (1 − s)^k`.
    pub fn inverse(&self) -> Result<CfSeries> {
        if self.coeff(&Partition::empty()) != ChowClass::one(&self.ambient) {
            return Err(Error::Domain("series must have constant term 1".into()));
        }
        let mut neg_tail = CfSeries {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (i, c) in &self.terms {
            if !i.is_empty() {
                neg_tail.insert_add(i.clone(), c.neg());
            }
        }
        let mut acc = CfSeries::one(&self.ambient, self.max_degree);
        let mut power = CfSeries::one(&self.ambient, self.max_degree);
        // every factor of the tail raises the t-degree by at least one
        for _ in 0..self.max_degree {
            power = power.mul(&neg_tail)?;
            if power.terms.is_empty() {
                break;
            }
            for (i, c) in &power.terms {
                acc.insert_add(i.clone(), c.clone());
            }
        }
        Ok(acc)
    }
}

/// The total Conner-Floyd class `∏ (Σ_J m_J(roots) t_J)^{±1}` to t-degree
/// `max_degree`.
pub fn cf_series(v: &VirtualBundle, max_degree: u64) -> Result<CfSeries> {
    let x = &v.ambient;
    let mut positive = CfSeries::one(x, max_degree);
    let mut negative = CfSeries::one(x, max_degree);
    for (sign, twist) in &v.terms {
        let s = CfSeries::of_root(&ChowClass::linear(x, twist)?, max_degree);
        if *sign > 0 {
            positive = positive.mul(&s)?;
        } else {
            negative = negative.mul(&s)?;
        }
    }
    positive.mul(&negative.inverse()?)
}

/// The coefficient of `t_I` in [`cf_series`].
pub fn cf_chern(v: &VirtualBundle, i: &Partition) -> Result<ChowClass> {
    Ok(cf_series(v, i.weight())?.coeff(i))
}
