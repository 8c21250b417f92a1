//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use cobcalc::adams::{decomposition_check, e2_rank, e2_rank_by_generators};
use cobcalc::chow::{newton_class, tangent_bundle, ProjProduct, VirtualBundle};
use cobcalc::criterion::{msp_criterion, stong_family};
use cobcalc::partition::{enumerate, Predicate};
use cobcalc::steenrod::{power_op, power_op_oracle, stability_bound};
use cobcalc::stong::{
    build_x, congruence_check, exceptional_exponent, s_number, s_number_bruteforce, valuation_table,
};
use cobcalc::symfun::{pair_through_diagonal, u_to_b_identity_holds, BMonomial, BPoly, ZClass};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn report(n: u32, name: &str, outcome: Check) -> bool {
    match &outcome {
        Ok(()) => println!("criterion {n} [{name}]: PASS"),
        Err(why) => println!("criterion {n} [{name}]: FAIL ({why})"),
    }
    outcome.is_ok()
}

fn valuation_theorem() -> Check {
    let start = Instant::now();
    for l in [3u64, 5, 7] {
        for row in valuation_table(l, 30).map_err(|e| e.to_string())? {
            let want = u64::from(exceptional_exponent(row.d, l).is_some());
            ensure(row.valuation == want, || {
                format!("l={l} d={}: ν={} want {want}", row.d, row.valuation)
            })?;
        }
    }
    within(start, Duration::from_secs(10))
}

fn congruence() -> Check {
    for l in [3u64, 5, 7] {
        for d in (1..=30).filter(|&d| exceptional_exponent(d, l).is_none()) {
            let c = congruence_check(d, l).map_err(|e| e.to_string())?;
            ensure(c.equal, || format!("l={l} d={d}: {} vs {}", c.lhs, c.rhs))?;
        }
    }
    Ok(())
}

const FACTOR_LISTS: [&[u32]; 50] = [
    &[1, 1],
    &[1, 1, 1, 1],
    &[3, 1],
    &[1, 1, 1, 1, 1, 1],
    &[3, 1, 1, 1],
    &[3, 3],
    &[5, 1],
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[3, 1, 1, 1, 1, 1],
    &[3, 3, 1, 1],
    &[5, 1, 1, 1],
    &[5, 3],
    &[7, 1],
    &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[3, 1, 1, 1, 1, 1, 1, 1],
    &[3, 3, 1, 1, 1, 1],
    &[3, 3, 3, 1],
    &[5, 1, 1, 1, 1, 1],
    &[5, 3, 1, 1],
    &[5, 5],
    &[7, 1, 1, 1],
    &[7, 3],
    &[9, 1],
    &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[3, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[3, 3, 1, 1, 1, 1, 1, 1],
    &[3, 3, 3, 1, 1, 1],
    &[3, 3, 3, 3],
    &[5, 1, 1, 1, 1, 1, 1, 1],
    &[5, 3, 1, 1, 1, 1],
    &[5, 3, 3, 1],
    &[5, 5, 1, 1],
    &[7, 1, 1, 1, 1, 1],
    &[7, 3, 1, 1],
    &[7, 5],
    &[9, 1, 1, 1],
    &[9, 3],
    &[11, 1],
    &[1, 3],
    &[1, 5],
    &[1, 1, 3, 1],
    &[1, 3, 1, 3],
    &[1, 7],
    &[3, 5],
    &[1, 5, 1, 3],
    &[1, 9],
    &[3, 7],
    &[1, 1, 1, 9],
    &[1, 3, 3, 5],
    &[5, 7],
];

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut spaces: Vec<ProjProduct> = FACTOR_LISTS
        .iter()
        .map(|dims| ProjProduct::new(dims.to_vec()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    for l in [3u64, 5, 7] {
        for d in 1..=5 {
            spaces.push(build_x(d, l).map_err(|e| e.to_string())?);
        }
    }
    for x in &spaces {
        ensure(x.total_dim() <= 12, || format!("{x} too large"))?;
        let closed = s_number(x).map_err(|e| e.to_string())?;
        let brute = s_number_bruteforce(x).map_err(|e| e.to_string())?;
        ensure(closed == brute, || format!("{x}: {closed} vs {brute}"))?;
    }
    within(start, Duration::from_secs(60))
}

fn b_monomials(max_weight: u64, l: u64) -> Vec<BPoly> {
    (0..=(max_weight / 2) as u32)
        .flat_map(|n| enumerate(n, Predicate::All))
        .map(|p| BPoly::monomial(Some(l), BMonomial::from_partition(&p), BigInt::from(1)))
        .collect()
}

fn total_product(f: &BPoly, g: &BPoly, t: i64, l: u64) -> Result<BPoly, String> {
    let mut acc = BPoly::zero(Some(l));
    for a in 0..=t {
        let lhs = power_op(2 * a, f, l).map_err(|e| e.to_string())?;
        let rhs = power_op(2 * (t - a), g, l).map_err(|e| e.to_string())?;
        acc = &acc + &(&lhs * &rhs);
    }
    Ok(acc)
}

fn steenrod() -> Check {
    let err = |e: cobcalc::Error| e.to_string();
    for l in [3u64, 5] {
        for j in 1..=4 {
            let f = BPoly::generator(Some(l), j);
            for i in 0..=6 {
                let fast = power_op(i, &f, l).map_err(err)?;
                let slow = power_op_oracle(i, &f, l, stability_bound(i, &f, l)).map_err(err)?;
                ensure(fast == slow, || {
                    format!("P^{i}(b{j}) at l={l}: {fast} vs {slow}")
                })?;
            }
        }
    }
    // twisted Cartan: P(fg)·P(1) = P(f)·P(g)
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..100 {
        let l = if k % 2 == 0 { 3 } else { 5 };
        let pool = b_monomials(8, l);
        let f = &pool[rng.gen_range(0..pool.len())];
        let g = &pool[rng.gen_range(0..pool.len())];
        for t in 0..=3 {
            let lhs = total_product(&(f * g), &BPoly::one(Some(l)), t, l)?;
            let rhs = total_product(f, g, t, l)?;
            ensure(lhs == rhs, || {
                format!("Cartan fails for {f}, {g} at t={t} l={l}")
            })?;
        }
    }
    for l in [3u64, 5] {
        for f in b_monomials(12, l) {
            for i in [1i64, 3, 5] {
                let fast = power_op(i, &f, l).map_err(err)?;
                let slow = power_op_oracle(i, &f, l, stability_bound(i, &f, l)).map_err(err)?;
                ensure(fast.is_zero() && slow.is_zero(), || {
                    format!("P^{i}({f}) ≠ 0 at l={l}")
                })?;
            }
        }
    }
    let b1 = BPoly::generator(Some(3), 1);
    let anchor: BPoly = "2*b1^3 + b1*b2"
        .parse::<BPoly>()
        .map_err(err)?
        .reduce_mod(3);
    let got = power_op(2, &b1, 3).map_err(err)?;
    ensure(got == anchor, || format!("P²(b1) = {got}"))
}

fn decomposition() -> Check {
    let start = Instant::now();
    for l in [3u64, 5] {
        for row in decomposition_check(60, l).map_err(|e| e.to_string())? {
            ensure(row.equal, || {
                format!("l={l} w={}: {} vs {}", row.weight, row.lhs, row.rhs)
            })?;
        }
    }
    within(start, Duration::from_secs(5))
}

fn duality() -> Check {
    for l in [3u64, 5, 7] {
        for w in (0..=12).step_by(2) {
            let basis: Vec<_> = (0..=w)
                .step_by(2)
                .flat_map(|v| enumerate(v, Predicate::EvenNonLadic(l)))
                .collect();
            for omega in enumerate(w, Predicate::Even) {
                for a in &basis {
                    for c in basis
                        .iter()
                        .filter(|c| a.weight() + c.weight() == u64::from(w))
                    {
                        let za = ZClass::basis(a, l).map_err(|e| e.to_string())?;
                        let zc = ZClass::basis(c, l).map_err(|e| e.to_string())?;
                        let got =
                            pair_through_diagonal(&za, &zc, &omega).map_err(|e| e.to_string())?;
                        let want = u64::from(a.concat(c) == omega);
                        ensure(got == want, || {
                            format!("⟨z{a}·z{c}, u{omega}⟩ = {got} at l={l}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn newton_structure() -> Check {
    let err = |e: cobcalc::Error| e.to_string();
    for n in 2..=10 {
        for dims in enumerate(n, Predicate::All)
            .into_iter()
            .filter(|p| p.len() >= 2)
        {
            let x = ProjProduct::new(dims.parts().to_vec()).map_err(err)?;
            let t = tangent_bundle(&x);
            let top = newton_class(&t, n).map_err(err)?.deg();
            ensure(top == BigInt::from(0), || format!("s_{n}({x}) = {top}"))?;
            let mut w = VirtualBundle::zero(&x);
            let twist: Vec<i64> = (0..x.factors() as i64).map(|i| i - 1).collect();
            w.push(1, twist).map_err(err)?;
            w.push(-1, vec![2; x.factors()]).map_err(err)?;
            let sum = t.concat(&w).map_err(err)?;
            for k in 1..=n {
                let whole = newton_class(&sum, k).map_err(err)?;
                let parts = newton_class(&t, k)
                    .map_err(err)?
                    .add(&newton_class(&w, k).map_err(err)?)
                    .map_err(err)?;
                ensure(whole == parts, || {
                    format!("additivity fails on {x} at k={k}")
                })?;
            }
        }
    }
    for w in (0..=16).step_by(2) {
        for omega in enumerate(w, Predicate::Even) {
            ensure(u_to_b_identity_holds(&omega).map_err(err)?, || {
                format!("u_to_b fails at {omega}")
            })?;
        }
    }
    Ok(())
}

fn criterion_end_to_end() -> Check {
    let err = |e: cobcalc::Error| e.to_string();
    for l in [3u64, 5, 7] {
        let fam = stong_family(l, 20).map_err(err)?;
        ensure(msp_criterion(&fam, l, 20).map_err(err)?.pass, || {
            format!("family fails at l={l}")
        })?;
        for d in 1..=20 {
            let bad = fam.with_scaled_entry(d, &BigInt::from(l)).map_err(err)?;
            let failed: Vec<u64> = msp_criterion(&bad, l, 20)
                .map_err(err)?
                .failures()
                .map(|r| r.d)
                .collect();
            ensure(failed == vec![d], || {
                format!("scaling d={d} at l={l} fails {failed:?}")
            })?;
        }
    }
    Ok(())
}

fn ranks() -> Check {
    let err = |e: cobcalc::Error| e.to_string();
    for d in 1..=30u64 {
        let p = BigUint::from(enumerate(d as u32, Predicate::All).len());
        let by_dp = e2_rank(d).map_err(err)?;
        ensure(by_dp == p, || {
            format!("e2_rank({d}) = {by_dp}, p({d}) = {p}")
        })?;
        for l in [3u64, 5, 7] {
            let by_gens = e2_rank_by_generators(d, l).map_err(err)?;
            ensure(by_gens == p, || {
                format!("generator count at d={d} l={l} is {by_gens}")
            })?;
        }
    }
    Ok(())
}

fn main() {
    let results = [
        report(1, "valuation theorem", valuation_theorem()),
        report(2, "congruence", congruence()),
        report(3, "oracle equivalence", oracle_equivalence()),
        report(4, "steenrod differential", steenrod()),
        report(5, "decomposition identity", decomposition()),
        report(6, "duality", duality()),
        report(7, "newton classes", newton_structure()),
        report(8, "criterion end to end", criterion_end_to_end()),
        report(9, "rank bookkeeping", ranks()),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
