//! Reduced powers by brute-force expansion in Borel roots.
//!
//! Nothing here goes through the symmetric-function engine: `f(e₁, e₂, …)`
//! is multiplied out in `r` roots, the operation is applied to each root
//! monomial, the result is divided by `e_r`, and the quotient is rewritten in
//! the `b_j` by leading-term elimination, with the monomial coefficients of
//! each `e_λ` counted as 0/1 matrices.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::partition::{enumerate, Partition, Predicate};
use crate::symfun::{BMonomial, BPoly};
use crate::valuation::check_odd_prime;
use crate::{Error, Memo, Result};

/// A polynomial in roots `ξ₁, …, ξ_r` over `ℤ/ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPoly {
    roots: usize,
    prime: u64,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl RootPoly {
    pub fn zero(roots: usize, prime: u64) -> Self {
        RootPoly {
            roots,
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(roots: usize, prime: u64) -> Self {
        let mut p = RootPoly::zero(roots, prime);
        p.add_term(vec![0; roots], 1);
        p
    }

    pub fn roots(&self) -> usize {
        self.roots
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> u64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: u64) {
        assert_eq!(exps.len(), self.roots);
        let v = (self.coeff(&exps) + c % self.prime) % self.prime;
        if v == 0 {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, v);
        }
    }

    pub fn mul(&self, other: &RootPoly) -> RootPoly {
        let mut out = RootPoly::zero(self.roots, self.prime);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb % self.prime);
            }
        }
        out
    }

    /// `e_j(ξ₁, …, ξ_r)`.
    pub fn elementary(roots: usize, prime: u64, j: usize) -> RootPoly {
        let mut out = RootPoly::zero(roots, prime);
        let mut pick = vec![0u32; roots];
        fn go(start: usize, left: usize, pick: &mut Vec<u32>, out: &mut RootPoly) {
            if left == 0 {
                out.add_term(pick.clone(), 1);
                return;
            }
            for m in start..pick.len() {
                if pick.len() - m < left {
                    break;
                }
                pick[m] = 1;
                go(m + 1, left - 1, pick, out);
                pick[m] = 0;
            }
        }
        go(0, j, &mut pick, &mut out);
        out
    }

    /// `f(e₁(ξ), e₂(ξ), …)`.
    pub fn from_bpoly(f: &BPoly, roots: usize, prime: u64) -> RootPoly {
        let mut out = RootPoly::zero(roots, prime);
        let mut cache: HashMap<usize, RootPoly> = HashMap::new();
        for (m, c) in f.terms() {
            let c = residue(c, prime);
            if c == 0 {
                continue;
            }
            let mut term = RootPoly::one(roots, prime);
            for (idx, &k) in m.exponents().iter().enumerate() {
                let e = cache
                    .entry(idx + 1)
                    .or_insert_with(|| RootPoly::elementary(roots, prime, idx + 1));
                for _ in 0..k {
                    term = term.mul(e);
                }
            }
            for (e, v) in term.terms {
                out.add_term(e, v * c % prime);
            }
        }
        out
    }

    /// Multiply by `e_r = ξ₁⋯ξ_r`.
    pub fn times_top(&self) -> RootPoly {
        RootPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().map(|x| x + 1).collect(), c))
                .collect(),
            ..self.clone()
        }
    }
}

fn residue(c: &BigInt, l: u64) -> u64 {
    let l = BigInt::from(l);
    u64::try_from(((c % &l) + &l) % &l).expect("residue fits")
}

/// Binomial coefficient mod a small prime, by Pascal's rule.
fn binomial_mod(n: u32, k: u32, l: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u64; k as usize + 1];
    row[0] = 1;
    for i in 1..=n as usize {
        for j in (1..=k.min(i as u32) as usize).rev() {
            row[j] = (row[j] + row[j - 1]) % l;
        }
    }
    row[k as usize]
}

/// The part of `∏ (ξ_m + ξ_m^ℓ)^{a_m}` with exactly `t` raised factors,
/// restricted to weakly decreasing exponent vectors.
fn raised_piece_dominant(exps: &[u32], t: u32, l: u64, out: &mut BTreeMap<Vec<u32>, u64>, c: u64) {
    let step = l as u32 - 1;
    #[allow(clippy::too_many_arguments)]
    fn go(
        m: usize,
        left: u32,
        exps: &[u32],
        step: u32,
        l: u64,
        acc: &mut Vec<u32>,
        coeff: u64,
        out: &mut BTreeMap<Vec<u32>, u64>,
    ) {
        if m == exps.len() {
            if left == 0 {
                let v = out.entry(acc.clone()).or_insert(0);
                *v = (*v + coeff) % l;
            }
            return;
        }
        let prev = if m == 0 { u32::MAX } else { acc[m - 1] };
        for u in 0..=exps[m].min(left) {
            let target = exps[m] + u * step;
            if target > prev {
                break;
            }
            let b = binomial_mod(exps[m], u, l);
            if b == 0 {
                continue;
            }
            acc.push(target);
            go(m + 1, left - u, exps, step, l, acc, coeff * b % l, out);
            acc.pop();
        }
    }
    go(0, t, exps, step, l, &mut Vec::new(), c, out);
}

/// Roots needed for the identification of `b_j` with `e_j` to be faithful
/// in the output degree: `weight(f)/2 + ⌈i(ℓ−1)/2⌉`.
pub fn stability_bound(i: i64, f: &BPoly, l: u64) -> usize {
    let raise = (i.max(0) as u64 * (l - 1)).div_ceil(2);
    (f.max_weight() / 2 + raise) as usize
}

/// Number of 0/1 matrices with row sums `rows` and column sums `cols`,
/// mod `ℓ`; this is the coefficient of `m_cols` in `e_rows`.
fn zero_one_count(rows: &Partition, cols: &Partition, l: u64) -> u64 {
    static CACHE: Memo<(Partition, Partition, u64), u64> = Memo::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (rows.clone(), cols.clone(), l);
    if let Some(&hit) = cache.lock().unwrap().get(&key) {
        return hit;
    }
    fn go(rows: &[u32], cols: Vec<u32>, l: u64, memo: &mut HashMap<(usize, Vec<u32>), u64>) -> u64 {
        if rows.is_empty() {
            return u64::from(cols.iter().all(|&c| c == 0));
        }
        let key = (rows.len(), cols.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        // group columns by remaining sum
        let mut groups: BTreeMap<u32, u32> = BTreeMap::new();
        for &c in &cols {
            if c > 0 {
                *groups.entry(c).or_insert(0) += 1;
            }
        }
        let groups: Vec<(u32, u32)> = groups.into_iter().collect();
        let mut total = 0;
        #[allow(clippy::too_many_arguments)]
        fn choose(
            g: usize,
            left: u32,
            groups: &[(u32, u32)],
            picked: &mut Vec<u32>,
            weight: u64,
            rows: &[u32],
            l: u64,
            memo: &mut HashMap<(usize, Vec<u32>), u64>,
            total: &mut u64,
        ) {
            if g == groups.len() {
                if left != 0 {
                    return;
                }
                let mut next = Vec::new();
                for (&(v, n), &x) in groups.iter().zip(picked.iter()) {
                    next.extend(std::iter::repeat_n(v - 1, x as usize));
                    next.extend(std::iter::repeat_n(v, (n - x) as usize));
                }
                next.retain(|&c| c > 0);
                next.sort_unstable_by(|a, b| b.cmp(a));
                *total = (*total + weight * go(&rows[1..], next, l, memo)) % l;
                return;
            }
            let (_, n) = groups[g];
            for x in 0..=n.min(left) {
                let b = binomial_mod(n, x, l);
                if b == 0 {
                    continue;
                }
                picked.push(x);
                choose(
                    g + 1,
                    left - x,
                    groups,
                    picked,
                    weight * b % l,
                    rows,
                    l,
                    memo,
                    total,
                );
                picked.pop();
            }
        }
        choose(
            0,
            rows[0],
            &groups,
            &mut Vec::new(),
            1,
            rows,
            l,
            memo,
            &mut total,
        );
        memo.insert(key, total);
        total
    }
    let v = go(rows.parts(), cols.parts().to_vec(), l, &mut HashMap::new());
    cache.lock().unwrap().insert(key, v);
    v
}

/// Rewrite a symmetric polynomial, given by its coefficients on dominant
/// monomials, in the `b_j`.
fn dominant_to_b(mut rem: BTreeMap<Partition, u64>, l: u64) -> BPoly {
    let mut out = BPoly::zero(Some(l));
    while let Some((mu, c)) = rem.pop_last() {
        let lambda = mu.conjugate();
        out.add_term(BMonomial::from_partition(&lambda), BigInt::from(c));
        // subtract c · e_λ, whose leading monomial is m_μ
        let weight = mu.weight() as u32;
        // a column sum is at most the number of rows
        let rows = lambda.len() as u32;
        for nu in enumerate(weight, Predicate::All) {
            if nu >= mu || nu.parts().first().is_some_and(|&p| p > rows) {
                continue;
            }
            let k = zero_one_count(&lambda, &nu, l);
            if k == 0 {
                continue;
            }
            let entry = rem.entry(nu.clone()).or_insert(0);
            *entry = (*entry + l - c * k % l) % l;
            if *entry == 0 {
                rem.remove(&nu);
            }
        }
    }
    out
}

/// `P^i(f) = P^i(f · e_r) / e_r`, computed in `r` explicit roots.
pub fn power_op_oracle(i: i64, f: &BPoly, l: u64, r: usize) -> Result<BPoly> {
    check_odd_prime(l)?;
    let f = f.reduce_mod(l);
    let bound = stability_bound(i, &f, l);
    if r < bound {
        return Err(Error::RootsBelowBound { roots: r, bound });
    }
    if i < 0 {
        return Ok(BPoly::zero(Some(l)));
    }
    let twisted = RootPoly::from_bpoly(&f, r, l).times_top();
    // P^i raises the root degree by i(ℓ−1)/2; each raised root adds ℓ−1
    let raise = i as u64 * (l - 1) / 2;
    if !raise.is_multiple_of(l - 1) {
        return Ok(BPoly::zero(Some(l)));
    }
    let t = (raise / (l - 1)) as u32;
    let mut image = BTreeMap::new();
    for (e, &c) in twisted.terms() {
        raised_piece_dominant(e, t, l, &mut image, c);
    }
    let mut quotient = BTreeMap::new();
    for (e, c) in image {
        if c == 0 {
            continue;
        }
        if e.contains(&0) {
            return Err(Error::Internal(format!(
                "image not divisible by e_{r} at {e:?}"
            )));
        }
        quotient.insert(Partition::from_multiset(e.iter().map(|x| x - 1)), c);
    }
    Ok(dominant_to_b(quotient, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str, l: u64) -> BPoly {
        s.parse::<BPoly>().unwrap().reduce_mod(l)
    }

    #[test]
    fn anchor_by_roots() {
        let f = b("b1", 3);
        assert_eq!(stability_bound(2, &f, 3), 3);
        let expected = b("2*b1^3 + b1*b2", 3);
        assert_eq!(power_op_oracle(2, &f, 3, 4).unwrap(), expected);
        assert_eq!(power_op_oracle(2, &f, 3, 8).unwrap(), expected);
        assert!(matches!(
            power_op_oracle(2, &f, 3, 2),
            Err(Error::RootsBelowBound { roots: 2, bound: 3 })
        ));
    }

    #[test]
    fn unit_anchor() {
        // P²(1)·e_r / e_r = e₁(ξ²) = p₂ = b₁² − 2b₂ ≡ b₁² + b₂ mod 3
        let got = power_op_oracle(2, &BPoly::one(Some(3)), 3, 2).unwrap();
        assert_eq!(got, b("b1^2 + b2", 3));
    }

    #[test]
    fn zero_one_matrices() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        // e₂e₁ = m₂₁ + 3m₁₁₁
        assert_eq!(zero_one_count(&p(&[2, 1]), &p(&[2, 1]), 7), 1);
        assert_eq!(zero_one_count(&p(&[2, 1]), &p(&[1, 1, 1]), 7), 3);
        assert_eq!(zero_one_count(&p(&[2, 1]), &p(&[3]), 7), 0);
    }

    #[test]
    fn elementary_roots() {
        assert_eq!(RootPoly::elementary(4, 5, 2).terms().len(), 6);
        assert_eq!(RootPoly::elementary(3, 5, 4).terms().len(), 0);
    }

    #[test]
    fn binomials_mod_prime() {
        assert_eq!(binomial_mod(5, 2, 7), 3);
        assert_eq!(binomial_mod(3, 1, 3), 0);
        assert_eq!(binomial_mod(2, 3, 3), 0);
    }
}
