//! Graded-dimension bookkeeping for the Adams spectral sequence of MSp.
//!
//! Nothing here builds modules. Each function counts basis elements in one
//! degree, and the checks compare two counts that must agree.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::partition::{enumerate, Predicate};
use crate::valuation::{check_odd_prime, power_minus_one_exponent};
use crate::{Error, Result};

/// `R = (r₁, r₂, …)` indexing the Milnor basis element `𝒫^R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MilnorExponent(Vec<u64>);

impl MilnorExponent {
    pub fn new(mut r: Vec<u64>) -> Self {
        while r.last() == Some(&0) {
            r.pop();
        }
        MilnorExponent(r)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// `Σ r_i (ℓ^i − 1)`.
    pub fn weight(&self, l: u64) -> u64 {
        let mut power = 1u64;
        let mut total = 0;
        for &r in &self.0 {
            power *= l;
            total += r * (power - 1);
        }
        total
    }
}

/// The weights `ℓ^i − 1 ≤ bound`, `i ≥ 1`.
fn milnor_weights(bound: u64, l: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut power = l;
    while power - 1 <= bound {
        out.push(power - 1);
        match power.checked_mul(l) {
            Some(p) => power = p,
            None => break,
        }
    }
    out
}

/// Number of parts-restricted partitions of every `n ≤ max`, by the usual
/// coin-change recursion.
fn restricted_partition_counts(max: u64, parts: &[u64]) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); max as usize + 1];
    table[0] = BigUint::one();
    for &p in parts {
        if p == 0 {
            continue;
        }
        for n in p as usize..=max as usize {
            let prev = table[n - p as usize].clone();
            table[n] += prev;
        }
    }
    table
}

/// `#{R : weight(R) = q}` for `q = 0, …, max`.
pub fn milnor_series(max: u64, l: u64) -> Result<Vec<BigUint>> {
    check_odd_prime(l)?;
    Ok(restricted_partition_counts(max, &milnor_weights(max, l)))
}

pub fn milnor_count(q: u64, l: u64) -> Result<BigUint> {
    Ok(milnor_series(q, l)?.pop().expect("non-empty table"))
}

/// `∏_{i≥1} 1/(1 − x^{ℓ^i−1})` to degree `max`, multiplied out as power
/// series with explicit geometric expansions.
pub fn milnor_series_by_product(max: u64, l: u64) -> Result<Vec<BigUint>> {
    check_odd_prime(l)?;
    let n = max as usize + 1;
    let mut acc = vec![BigUint::zero(); n];
    acc[0] = BigUint::one();
    for w in milnor_weights(max, l) {
        let geometric: Vec<usize> = (0..n).step_by(w as usize).collect();
        let mut next = vec![BigUint::zero(); n];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &g in &geometric {
                if i + g < n {
                    next[i + g] += a;
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRow {
    pub weight: u64,
    /// Partitions of `weight` into even parts.
    pub lhs: BigUint,
    /// `Σ_ω milnor_count(weight − |ω|)` over even non-ℓ-adic `ω`.
    pub rhs: BigUint,
    pub equal: bool,
}

/// Both counts in a single weight; odd weights give `0 = 0`.
pub fn decomposition_row(w: u64, l: u64) -> Result<DecompositionRow> {
    check_odd_prime(l)?;
    let w32 = u32::try_from(w).map_err(|_| Error::Domain(format!("weight {w} too large")))?;
    let lhs = BigUint::from(enumerate(w32, Predicate::Even).len());
    let milnor = milnor_series(w, l)?;
    let mut rhs = BigUint::zero();
    for v in (0..=w32).step_by(2) {
        let count = enumerate(v, Predicate::EvenNonLadic(l)).len();
        rhs += &milnor[(w32 - v) as usize] * BigUint::from(count);
    }
    let equal = lhs == rhs;
    Ok(DecompositionRow {
        weight: w,
        lhs,
        rhs,
        equal,
    })
}

/// Rows for every even weight up to `max_weight`.
pub fn decomposition_check(max_weight: u64, l: u64) -> Result<Vec<DecompositionRow>> {
    (0..=max_weight)
        .step_by(2)
        .map(|w| decomposition_row(w, l))
        .collect()
}

fn require_positive(d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::Domain("degree index must be at least 1".into()));
    }
    Ok(())
}

/// Rank of `E₂` for MSp in degree `−2d`: partitions of `2d` into even parts.
pub fn e2_rank(d: u64) -> Result<BigUint> {
    require_positive(d)?;
    let even: Vec<u64> = (1..=d).map(|k| 2 * k).collect();
    Ok(restricted_partition_counts(2 * d, &even)
        .pop()
        .expect("non-empty"))
}

/// The same rank, counted as monomials in the generators `z_{(2k)}`
/// (`2k ≠ ℓ^i − 1`) of degree `2k` and `h'_r` (`r ≥ 1`) of degree `ℓ^r − 1`.
pub fn e2_rank_by_generators(d: u64, l: u64) -> Result<BigUint> {
    require_positive(d)?;
    check_odd_prime(l)?;
    let mut degrees: Vec<u64> = (1..=d)
        .map(|k| 2 * k)
        .filter(|&n| power_minus_one_exponent(n, l).is_none())
        .collect();
    degrees.extend(milnor_weights(2 * d, l));
    Ok(restricted_partition_counts(2 * d, &degrees)
        .pop()
        .expect("non-empty"))
}

/// Rank of `ℤ[x₁, x₂, …]` in degree `d`, by the partition recursion.
pub fn mgl_rank(d: u64) -> Result<BigUint> {
    require_positive(d)?;
    let all: Vec<u64> = (1..=d).collect();
    Ok(restricted_partition_counts(d, &all)
        .pop()
        .expect("non-empty"))
}

/// The same rank by listing the monomials.
pub fn mgl_rank_by_enumeration(d: u64) -> Result<BigUint> {
    require_positive(d)?;
    let d = u32::try_from(d).map_err(|_| Error::Domain(format!("degree {d} too large")))?;
    Ok(BigUint::from(enumerate(d, Predicate::All).len()))
}

/// `(s, t, u)`, displayed as `(s,(t−s,u))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriDegree {
    pub s: i64,
    pub t: i64,
    pub u: i64,
}

impl TriDegree {
    pub fn new(s: i64, t: i64, u: i64) -> Self {
        TriDegree { s, t, u }
    }

    /// Built from the `(s, (t−s, u))` display convention.
    pub fn from_display(s: i64, t_minus_s: i64, u: i64) -> Self {
        TriDegree {
            s,
            t: t_minus_s + s,
            u,
        }
    }
}

impl fmt::Display for TriDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},({},{}))", self.s, self.t - self.s, self.u)
    }
}

/// Generators of `E₂` with weight at least `u_min`: the unit, `h'_r` for
/// `r ≥ 0`, and `z_{(2k)}` for `2k ≠ ℓ^i − 1`.
pub fn ext_generators(l: u64, u_min: i64) -> Result<Vec<(String, TriDegree)>> {
    check_odd_prime(l)?;
    if u_min > 0 {
        return Err(Error::Domain(format!("u_min must be ≤ 0, got {u_min}")));
    }
    let mut out = vec![("1".to_string(), TriDegree::new(0, 0, 0))];
    let mut power: i64 = 1;
    let mut r = 0;
    while 1 - power >= u_min {
        out.push((
            format!("h'{r}"),
            TriDegree::from_display(1, 1 - 2 * power, 1 - power),
        ));
        power *= l as i64;
        r += 1;
    }
    let mut k = 1i64;
    while -2 * k >= u_min {
        if power_minus_one_exponent(2 * k as u64, l).is_none() {
            out.push((format!("z({})", 2 * k), TriDegree::new(0, -4 * k, -2 * k)));
        }
        k += 1;
    }
    out.sort_by(|a, b| b.1.u.cmp(&a.1.u).then(a.1.s.cmp(&b.1.s)));
    Ok(out)
}

/// What the model says about `dim E₂^{s,t,u}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum E2Dim {
    Known(BigUint),
    /// Below the line `t = 2u` the answer depends on the base field.
    FieldDependent,
}

/// Dimension of `E₂^{s,t,u}` in the polynomial model on the generators of
/// [`ext_generators`]. Every generator has `t = 2u`, so the model is zero
/// above that line.
pub fn e2_dimension(s: i64, t: i64, u: i64, l: u64) -> Result<E2Dim> {
    check_odd_prime(l)?;
    if t > 2 * u || s < 0 || u > 0 {
        return Ok(E2Dim::Known(BigUint::zero()));
    }
    if t < 2 * u {
        return Ok(E2Dim::FieldDependent);
    }
    // count monomials with total h'-count s and weight u; h'₀ has weight 0
    let n = (-u) as usize;
    let s = s as usize;
    let z_degrees: Vec<usize> = (1..=n / 2)
        .map(|k| 2 * k)
        .filter(|&m| power_minus_one_exponent(m as u64, l).is_none())
        .collect();
    let h_degrees: Vec<usize> = milnor_weights(n as u64, l)
        .into_iter()
        .map(|w| w as usize)
        .collect();
    // table[j][m]: monomials with j factors h'_r (r ≥ 1) in weight −m
    let mut table = vec![vec![BigUint::zero(); n + 1]; s + 1];
    table[0][0] = BigUint::one();
    for &zd in &z_degrees {
        for row in table.iter_mut() {
            for m in zd..=n {
                let prev = row[m - zd].clone();
                row[m] += prev;
            }
        }
    }
    for &hd in &h_degrees {
        for j in 1..=s {
            for m in hd..=n {
                let prev = table[j - 1][m - hd].clone();
                table[j][m] += prev;
            }
        }
    }
    // the remaining filtration is made up by powers of h'₀
    let total = (0..=s).map(|j| table[j][n].clone()).sum();
    Ok(E2Dim::Known(total))
}

/// True iff the model assigns dimension zero at `(s, t, u)`.
pub fn vanishing_check(s: i64, t: i64, u: i64, l: u64) -> Result<bool> {
    Ok(e2_dimension(s, t, u, l)? == E2Dim::Known(BigUint::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_count(0, 3).unwrap(), n(1));
        assert_eq!(milnor_count(2, 3).unwrap(), n(1));
        assert_eq!(milnor_count(8, 3).unwrap(), n(2));
        assert_eq!(milnor_count(3, 3).unwrap(), n(0));
        assert_eq!(MilnorExponent::new(vec![4, 0]).weight(3), 8);
        assert_eq!(MilnorExponent::new(vec![0, 1]).weight(3), 8);
    }

    #[test]
    fn milnor_series_agree() {
        for l in [3, 5, 7] {
            assert_eq!(
                milnor_series(60, l).unwrap(),
                milnor_series_by_product(60, l).unwrap()
            );
        }
    }

    #[test]
    fn decomposition_examples() {
        let r = decomposition_row(2, 3).unwrap();
        assert_eq!((r.lhs, r.rhs), (n(1), n(1)));
        let r = decomposition_row(8, 3).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (n(5), n(5)));
        assert!(r.equal);
        let r = decomposition_row(7, 3).unwrap();
        assert_eq!((r.lhs, r.rhs), (n(0), n(0)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(e2_rank(1).unwrap(), n(1));
        assert_eq!(e2_rank(2).unwrap(), n(2));
        assert_eq!(e2_rank(4).unwrap(), n(5));
        assert!(e2_rank(0).is_err());
        for l in [3, 5, 7] {
            for d in 1..=30 {
                assert_eq!(e2_rank(d).unwrap(), e2_rank_by_generators(d, l).unwrap());
                assert_eq!(e2_rank(d).unwrap(), mgl_rank(d).unwrap());
            }
        }
    }

    #[test]
    fn generator_examples() {
        let g = ext_generators(3, -4).unwrap();
        let names: Vec<&str> = g.iter().map(|(s, _)| s.as_str()).collect();
        assert_eq!(names.len(), 4);
        let find = |name: &str| g.iter().find(|(s, _)| s == name).unwrap().1.to_string();
        assert_eq!(find("1"), "(0,(0,0))");
        assert_eq!(find("h'0"), "(1,(-1,0))");
        assert_eq!(find("z(4)"), "(0,(-8,-4))");
        assert_eq!(find("h'1"), "(1,(-5,-2))");
        assert!(!names.contains(&"z(2)"));
        assert!(g.iter().all(|(_, d)| d.t == 2 * d.u));
    }

    #[test]
    fn vanishing_examples() {
        assert!(vanishing_check(0, 3, 1, 3).unwrap());
        for s in 0..5 {
            for u in -10..=0 {
                assert!(vanishing_check(s, 2 * u + 1, u, 3).unwrap());
            }
        }
        assert!(!vanishing_check(0, 0, 0, 3).unwrap());
        assert_eq!(e2_dimension(0, -4, -1, 3).unwrap(), E2Dim::FieldDependent);
        // s = 1, u = −2 at ℓ = 3: only h'₁
        assert_eq!(e2_dimension(1, -4, -2, 3).unwrap(), E2Dim::Known(n(1)));
        // s = 0, u = −4: z(4) only (z(2) is excluded)
        assert_eq!(e2_dimension(0, -8, -4, 3).unwrap(), E2Dim::Known(n(1)));
    }
}
