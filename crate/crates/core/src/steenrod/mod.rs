//! Reduced power operations on `ℤ/ℓ[b₁, b₂, …]`.
//!
//! On a Borel root `ξ` the total operation is `P(ξ) = ξ + ξ^ℓ`, so `P^{2t}`
//! picks out the terms with exactly `t` roots raised to the ℓ-th power and
//! every odd-index operation vanishes. The `b_j` are elementary symmetric in
//! the roots, and the operation on `b`-classes is the Thom-twisted one:
//! `P^i(f) = P^i(f · e_r) / e_r` for `r ≫ 0`.
//!
//! The fast path [`power_op`] uses `P(e_r) = e_r · Σ_c e_c(ξ^{ℓ−1})` and
//! multiplicativity, working entirely with symmetric functions. The
//! independent path in [`oracle`] expands everything into root monomials.

pub mod oracle;

pub use oracle::{power_op_oracle, stability_bound, RootPoly};

use std::sync::Arc;

use crate::partition::Partition;
use crate::symfun::{BMonomial, BPoly, Basis, Ring, SymFn};
use crate::valuation::check_odd_prime;
use crate::{Error, Memo, Result};

/// Default bound on the symmetric-function degree of an operation's output.
pub const DEFAULT_DEGREE_CAP: u64 = 32;

/// A monomial symmetric function, reduced mod `ℓ` and read in the `b_i`.
fn monomial_in_b(lambda: Partition, l: u64) -> Result<BPoly> {
    let m = SymFn::basis_element(Basis::Monomial, Ring::ModPrime(l), lambda);
    BPoly::from_elementary(&m.convert_capped(Basis::Elementary, u64::MAX)?)
}

type PieceKey = (u64, u32, u32);

/// The part of `P(b_j)` with `a` raised roots: `m_{(ℓ^a, 1^{j−a})}`.
fn piece_of_generator(l: u64, j: u32, a: u32) -> Result<Arc<BPoly>> {
    static CACHE: Memo<PieceKey, Arc<BPoly>> = Memo::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(l, j, a)) {
        return Ok(hit.clone());
    }
    let lambda =
        Partition::repeated(l as u32, a as usize).concat(&Partition::repeated(1, (j - a) as usize));
    let p = Arc::new(monomial_in_b(lambda, l)?);
    cache.lock().unwrap().insert((l, j, a), p.clone());
    Ok(p)
}

/// `e_c(ξ^{ℓ−1}) = m_{((ℓ−1)^c)}`, the degree-`c` part of `P(e_r)/e_r`.
fn thom_factor(l: u64, c: u32) -> Result<Arc<BPoly>> {
    static CACHE: Memo<(u64, u32), Arc<BPoly>> = Memo::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(l, c)) {
        return Ok(hit.clone());
    }
    let p = Arc::new(monomial_in_b(
        Partition::repeated(l as u32 - 1, c as usize),
        l,
    )?);
    cache.lock().unwrap().insert((l, c), p.clone());
    Ok(p)
}

/// Pieces `0..=t` of the untwisted total operation on a `b`-monomial.
fn untwisted_pieces(m: &BMonomial, l: u64, t: u32) -> Result<Vec<BPoly>> {
    let mut acc = vec![BPoly::zero(Some(l)); t as usize + 1];
    acc[0] = BPoly::one(Some(l));
    for (idx, &k) in m.exponents().iter().enumerate() {
        let j = idx as u32 + 1;
        let factor: Vec<Arc<BPoly>> = (0..=j.min(t))
            .map(|a| piece_of_generator(l, j, a))
            .collect::<Result<_>>()?;
        for _ in 0..k {
            let mut next = vec![BPoly::zero(Some(l)); t as usize + 1];
            for (s, lhs) in acc.iter().enumerate() {
                if lhs.is_zero() {
                    continue;
                }
                for (a, rhs) in factor.iter().enumerate() {
                    if s + a <= t as usize {
                        next[s + a] = &next[s + a] + &(lhs * rhs);
                    }
                }
            }
            acc = next;
        }
    }
    Ok(acc)
}

/// `P^i(f)` for the Thom-twisted action, with the default degree cap.
pub fn power_op(i: i64, f: &BPoly, l: u64) -> Result<BPoly> {
    power_op_capped(i, f, l, DEFAULT_DEGREE_CAP)
}

pub fn power_op_capped(i: i64, f: &BPoly, l: u64, cap: u64) -> Result<BPoly> {
    check_odd_prime(l)?;
    let f = f.reduce_mod(l);
    if i < 0 {
        return Ok(BPoly::zero(Some(l)));
    }
    if i == 0 {
        return Ok(f);
    }
    if i % 2 == 1 {
        return Ok(BPoly::zero(Some(l)));
    }
    let t = u32::try_from(i / 2)
        .map_err(|_| Error::Domain(format!("operation index {i} too large")))?;
    let out_degree = f.max_weight() / 2 + u64::from(t) * (l - 1);
    if out_degree > cap {
        return Err(Error::WeightCapExceeded {
            weight: 2 * out_degree,
            cap: 2 * cap,
        });
    }
    let mut out = BPoly::zero(Some(l));
    for (m, c) in f.terms() {
        let pieces = untwisted_pieces(m, l, t)?;
        for (a, piece) in pieces.iter().enumerate() {
            if piece.is_zero() {
                continue;
            }
            let e = thom_factor(l, t - a as u32)?;
            out = &out + &(piece * &*e).scale(c);
        }
    }
    Ok(out)
}

/// The Bockstein acts trivially on `ℤ/ℓ[b]`.
pub fn bockstein(_f: &BPoly, l: u64) -> Result<BPoly> {
    check_odd_prime(l)?;
    Ok(BPoly::zero(Some(l)))
}

/// `∏_m (ξ_m + ξ_m^ℓ)^{a_m}` expanded mod `ℓ`.
pub fn total_power_on_monomial(exps: &[u32], l: u64) -> Result<RootPoly> {
    check_odd_prime(l)?;
    let mut out = RootPoly::one(exps.len(), l);
    for (m, &a) in exps.iter().enumerate() {
        let mut factor = RootPoly::zero(exps.len(), l);
        let mut e = vec![0; exps.len()];
        e[m] = 1;
        factor.add_term(e.clone(), 1);
        e[m] = l as u32;
        factor.add_term(e, 1);
        for _ in 0..a {
            out = out.mul(&factor);
        }
    }
    Ok(out)
}

/// `P^{2t}` on root monomials raises the root degree by `t(ℓ−1)`.
pub fn expected_weight(i: i64, f_weight: u64, l: u64) -> u64 {
    f_weight + (i.max(0) as u64) * (l - 1)
}

/// Helper for callers that want `P^i(b_j)`.
pub fn power_op_on_generator(i: i64, j: u32, l: u64) -> Result<BPoly> {
    power_op(i, &BPoly::generator(Some(l), j), l)
}
