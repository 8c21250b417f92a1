//! The classes `u_ω` as b-polynomials, their diagonal, and the dual
//! `z_ω` algebra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BMonomial, BPoly, Basis, Ring, SymFn, DEFAULT_WEIGHT_CAP};
use crate::partition::Partition;
use crate::valuation::check_odd_prime;
use crate::{Error, Result};

/// `u_ω` in the generators: the polynomial `P` with
/// `P(e₁(x), e₂(x), …) = m_{ω/2}(x)`, where `x_i = t_i²`.
pub fn u_to_b(omega: &Partition) -> Result<BPoly> {
    u_to_b_capped(omega, 2 * DEFAULT_WEIGHT_CAP)
}

/// As [`u_to_b`], rejecting `|ω| > cap`.
pub fn u_to_b_capped(omega: &Partition, cap: u64) -> Result<BPoly> {
    let half = omega.halve()?;
    if omega.weight() > cap {
        return Err(Error::WeightCapExceeded {
            weight: omega.weight(),
            cap,
        });
    }
    let m = SymFn::basis_element(Basis::Monomial, Ring::Integer, half);
    let e = m.convert_capped(Basis::Elementary, u64::MAX)?;
    BPoly::from_elementary(&e)
}

/// Ordered splits `(ω₁, ω₂)` with `ω₁ ∪ ω₂ = ω`, each listed once.
pub fn diagonal(omega: &Partition) -> Vec<(Partition, Partition)> {
    omega.splits()
}

pub type BTensor = BTreeMap<(BMonomial, BMonomial), BigInt>;

fn tensor_add(acc: &mut BTensor, key: (BMonomial, BMonomial), c: BigInt) {
    let entry = acc.entry(key.clone()).or_default();
    *entry += c;
    if entry.is_zero() {
        acc.remove(&key);
    }
}

/// The ring map `b_k ↦ Σ_{i+j=k} b_i ⊗ b_j` (with `b₀ = 1`) applied to `f`.
pub fn b_coproduct(f: &BPoly) -> BTensor {
    let mut out = BTensor::new();
    for (m, c) in f.terms() {
        let mut acc: BTensor = BTreeMap::from([((BMonomial::one(), BMonomial::one()), c.clone())]);
        for (idx, &k) in m.exponents().iter().enumerate() {
            let gen = idx as u32 + 1;
            for _ in 0..k {
                let mut next = BTensor::new();
                for ((a, b), v) in &acc {
                    for i in 0..=gen {
                        let left = if i == 0 {
                            BMonomial::one()
                        } else {
                            BMonomial::generator(i)
                        };
                        let j = gen - i;
                        let right = if j == 0 {
                            BMonomial::one()
                        } else {
                            BMonomial::generator(j)
                        };
                        tensor_add(&mut next, (a.mul(&left), b.mul(&right)), v.clone());
                    }
                }
                acc = next;
            }
        }
        for (key, v) in acc {
            tensor_add(&mut out, key, v);
        }
    }
    out
}

/// `Σ_{(ω₁,ω₂) ∈ diagonal(ω)} u_{ω₁} ⊗ u_{ω₂}` in the generators.
pub fn diagonal_in_b(omega: &Partition) -> Result<BTensor> {
    let mut out = BTensor::new();
    for (a, b) in diagonal(omega) {
        let ua = u_to_b(&a)?;
        let ub = u_to_b(&b)?;
        for (ma, ca) in ua.terms() {
            for (mb, cb) in ub.terms() {
                tensor_add(&mut out, (ma.clone(), mb.clone()), ca * cb);
            }
        }
    }
    Ok(out)
}

/// A mod-ℓ combination of the dual classes `z_ω`, `ω` even and not ℓ-adic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZClass {
    prime: u64,
    terms: BTreeMap<Partition, u64>,
}

fn check_support(omega: &Partition, l: u64) -> Result<()> {
    if !omega.is_even() {
        return Err(Error::NotEven(omega.to_string()));
    }
    if omega.is_ladic(l) {
        return Err(Error::LadicPartition {
            partition: omega.to_string(),
            prime: l,
        });
    }
    Ok(())
}

impl ZClass {
    pub fn zero(l: u64) -> Result<Self> {
        check_odd_prime(l)?;
        Ok(ZClass {
            prime: l,
            terms: BTreeMap::new(),
        })
    }

    pub fn unit(l: u64) -> Result<Self> {
        ZClass::basis(&Partition::empty(), l)
    }

    /// `z_ω`.
    pub fn basis(omega: &Partition, l: u64) -> Result<Self> {
        ZClass::from_terms(l, [(omega.clone(), 1)])
    }

    pub fn from_terms(l: u64, terms: impl IntoIterator<Item = (Partition, i64)>) -> Result<Self> {
        let mut z = ZClass::zero(l)?;
        for (omega, c) in terms {
            check_support(&omega, l)?;
            z.add_term(omega, c.rem_euclid(l as i64) as u64);
        }
        Ok(z)
    }

    fn add_term(&mut self, omega: Partition, c: u64) {
        let v = (self.terms.get(&omega).copied().unwrap_or(0) + c) % self.prime;
        if v == 0 {
            self.terms.remove(&omega);
        } else {
            self.terms.insert(omega, v);
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn terms(&self) -> &BTreeMap<Partition, u64> {
        &self.terms
    }

    pub fn add(&self, other: &ZClass) -> Result<ZClass> {
        same_prime(self, other)?;
        let mut out = self.clone();
        for (omega, &c) in &other.terms {
            out.add_term(omega.clone(), c);
        }
        Ok(out)
    }

    /// `⟨z, u_ω⟩`, the linear extension of `⟨z_ω, u_ω'⟩ = δ_{ω,ω'}`.
    pub fn pair(&self, omega: &Partition) -> u64 {
        self.terms.get(omega).copied().unwrap_or(0)
    }
}

fn same_prime(a: &ZClass, b: &ZClass) -> Result<()> {
    if a.prime != b.prime {
        return Err(Error::Domain(format!(
            "z-classes over ℤ/{} and ℤ/{}",
            a.prime, b.prime
        )));
    }
    Ok(())
}

/// Bilinear extension of `z_{ω₁} · z_{ω₂} = z_{ω₁ ∪ ω₂}`.
pub fn z_mul(a: &ZClass, b: &ZClass) -> Result<ZClass> {
    same_prime(a, b)?;
    let l = a.prime;
    let mut out = ZClass::zero(l)?;
    for (wa, &ca) in &a.terms {
        check_support(wa, l).map_err(|e| Error::Domain(e.to_string()))?;
        for (wb, &cb) in &b.terms {
            check_support(wb, l).map_err(|e| Error::Domain(e.to_string()))?;
            out.add_term(wa.concat(wb), ca * cb % l);
        }
    }
    Ok(out)
}

/// `⟨z₁ ⊗ z₂, δ(u_ω)⟩`, evaluated term by term on [`diagonal`].
pub fn pair_through_diagonal(z1: &ZClass, z2: &ZClass, omega: &Partition) -> Result<u64> {
    same_prime(z1, z2)?;
    let l = z1.prime;
    Ok(diagonal(omega)
        .iter()
        .map(|(a, b)| z1.pair(a) * z2.pair(b) % l)
        .sum::<u64>()
        % l)
}

/// True when `u_to_b(ω)` evaluated at `b_s = e_s(t₁², …, t_k²)` equals
/// `m_{ω/2}(t₁², …, t_k²)`, with `k = |ω|/2`.
pub fn u_to_b_identity_holds(omega: &Partition) -> Result<bool> {
    use crate::poly::MPoly;
    let k = (omega.weight() / 2).max(1) as usize;
    let half = omega.halve()?;
    let squared = |f: &MPoly| {
        let mut out = MPoly::zero(k);
        for (e, c) in f.terms() {
            out.add_term(e.iter().map(|x| 2 * x).collect(), c.clone());
        }
        out
    };
    let es: Vec<MPoly> = (1..=k as u32)
        .map(|s| {
            let e = SymFn::basis_element(Basis::Elementary, Ring::Integer, Partition::single(s));
            super::expand_in_vars(&e, k).map(|p| squared(&p))
        })
        .collect::<Result<_>>()?;
    let lhs = u_to_b(omega)?.eval(&es);
    let m = SymFn::basis_element(Basis::Monomial, Ring::Integer, half);
    let rhs = squared(&super::expand_in_vars(&m, k)?);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate, Predicate};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn b(s: &str) -> BPoly {
        s.parse().unwrap()
    }

    #[test]
    fn u_to_b_examples() {
        assert_eq!(u_to_b(&p(&[2])).unwrap(), b("b1"));
        assert_eq!(u_to_b(&p(&[4])).unwrap(), b("b1^2 - 2*b2"));
        assert_eq!(u_to_b(&p(&[4, 2])).unwrap(), b("b1*b2 - 3*b3"));
        assert_eq!(u_to_b(&Partition::empty()).unwrap(), b("1"));
        assert!(matches!(u_to_b(&p(&[3])), Err(Error::NotEven(_))));
    }

    #[test]
    fn u_to_b_identity_small() {
        for w in (0..=10).step_by(2) {
            for omega in enumerate(w, Predicate::Even) {
                assert!(u_to_b_identity_holds(&omega).unwrap(), "{omega}");
            }
        }
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal(&p(&[2])).len(), 2);
        let d = diagonal(&p(&[2, 2]));
        assert_eq!(d.len(), 3);
        assert!(d.contains(&(p(&[2]), p(&[2]))));
        let d = diagonal(&p(&[4, 2]));
        assert_eq!(d.len(), 4);
        assert!(d.contains(&(p(&[4]), p(&[2]))));
        assert!(d.contains(&(p(&[2]), p(&[4]))));
        assert!(d.contains(&(Partition::empty(), p(&[4, 2]))));
    }

    #[test]
    fn diagonal_is_coassociative() {
        for w in (0..=10).step_by(2) {
            for omega in enumerate(w, Predicate::Even) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (a, c) in diagonal(&omega) {
                    for (a1, a2) in diagonal(&a) {
                        left.push((a1, a2, c.clone()));
                    }
                }
                for (a, c) in diagonal(&omega) {
                    for (c1, c2) in diagonal(&c) {
                        right.push((a.clone(), c1, c2));
                    }
                }
                left.sort();
                right.sort();
                assert_eq!(left, right, "{omega}");
            }
        }
    }

    #[test]
    fn diagonal_matches_coproduct_of_generators() {
        for w in (0..=12).step_by(2) {
            for omega in enumerate(w, Predicate::Even) {
                let direct = b_coproduct(&u_to_b(&omega).unwrap());
                assert_eq!(direct, diagonal_in_b(&omega).unwrap(), "{omega}");
            }
        }
    }

    #[test]
    fn z_examples() {
        let z4 = ZClass::basis(&p(&[4]), 3).unwrap();
        let z6 = ZClass::basis(&p(&[6]), 3).unwrap();
        assert_eq!(
            z_mul(&z4, &z6).unwrap(),
            ZClass::basis(&p(&[6, 4]), 3).unwrap()
        );
        assert_eq!(
            z_mul(&z4, &z4).unwrap(),
            ZClass::basis(&p(&[4, 4]), 3).unwrap()
        );
        let one = ZClass::unit(3).unwrap();
        assert_eq!(z_mul(&one, &z6).unwrap(), z6);
        assert_eq!(z4.pair(&p(&[4])), 1);
        assert_eq!(z4.pair(&p(&[2, 2])), 0);
        assert!(matches!(
            ZClass::basis(&p(&[2]), 3),
            Err(Error::LadicPartition { .. })
        ));
        let z5 = ZClass::from_terms(5, [(p(&[4, 2]), 2), (p(&[2, 2, 2]), 1)]);
        assert!(z5.is_err(), "4 = 5 - 1 is 5-adic");
        let z7 = ZClass::from_terms(7, [(p(&[4]), 1), (p(&[2, 2]), 1)]).unwrap();
        assert_eq!(z7.pair(&p(&[4])), 1);
    }

    #[test]
    fn duality_through_diagonal() {
        for l in [3u64, 5, 7] {
            for w in (0..=12).step_by(2) {
                let basis: Vec<Partition> = (0..=w)
                    .step_by(2)
                    .flat_map(|v| enumerate(v, Predicate::EvenNonLadic(l)))
                    .collect();
                for omega in enumerate(w, Predicate::Even) {
                    for a in &basis {
                        for c in &basis {
                            if a.weight() + c.weight() != u64::from(w) {
                                continue;
                            }
                            let za = ZClass::basis(a, l).unwrap();
                            let zc = ZClass::basis(c, l).unwrap();
                            let via_diag = pair_through_diagonal(&za, &zc, &omega).unwrap();
                            let via_mul = z_mul(&za, &zc).unwrap().pair(&omega);
                            assert_eq!(via_diag, via_mul, "{a} {c} {omega}");
                        }
                    }
                }
            }
        }
    }
}
