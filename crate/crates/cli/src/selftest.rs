//! The invariant suite behind `cobcalc self-test`.

use anyhow::Result;
use cobcalc::adams::{decomposition_check, e2_rank, e2_rank_by_generators};
use cobcalc::chow::{newton_class, tangent_bundle, ProjProduct};
use cobcalc::criterion::{msp_criterion, stong_family};
use cobcalc::partition::{enumerate, Predicate};
use cobcalc::steenrod::{power_op, power_op_oracle, stability_bound};
use cobcalc::stong::{
    build_x, congruence_check, exceptional_exponent, s_number, s_number_bruteforce_capped,
    valuation_table,
};
use cobcalc::symfun::{pair_through_diagonal, u_to_b_identity_holds, BPoly, ZClass};
use num_bigint::{BigInt, BigUint};

use crate::report::{Report, Table};
use crate::schema::CheckLine;

type Outcome = std::result::Result<(), String>;

fn fail(msg: String) -> Outcome {
    Err(msg)
}

fn valuations() -> Result<Outcome> {
    for l in [3u64, 5, 7] {
        for row in valuation_table(l, 30)? {
            if !row.matches() {
                return Ok(fail(format!("ℓ={l} d={}: ν={}", row.d, row.valuation)));
            }
        }
    }
    Ok(Ok(()))
}

fn congruences() -> Result<Outcome> {
    for l in [3u64, 5, 7] {
        for d in (1..=30).filter(|&d| exceptional_exponent(d, l).is_none()) {
            let c = congruence_check(d, l)?;
            if !c.equal {
                return Ok(fail(format!("ℓ={l} d={d}: {} vs {}", c.lhs, c.rhs)));
            }
        }
    }
    Ok(Ok(()))
}

fn closed_form(cap: u64) -> Result<Outcome> {
    for l in [3u64, 5, 7] {
        for d in 1.. {
            let x = build_x(d, l)?;
            if x.total_dim() > cap {
                break;
            }
            let (a, b) = (s_number(&x)?, s_number_bruteforce_capped(&x, cap)?);
            if a != b {
                return Ok(fail(format!("{x}: {a} vs {b}")));
            }
        }
    }
    Ok(Ok(()))
}

fn steenrod() -> Result<Outcome> {
    for l in [3u64, 5] {
        for j in 1..=4 {
            let f = BPoly::generator(Some(l), j);
            for i in 0..=6 {
                let fast = power_op(i, &f, l)?;
                if fast != power_op_oracle(i, &f, l, stability_bound(i, &f, l))? {
                    return Ok(fail(format!("P^{i}(b{j}) at ℓ={l}")));
                }
            }
        }
    }
    let anchor = "2*b1^3 + b1*b2".parse::<BPoly>()?.reduce_mod(3);
    if power_op(2, &BPoly::generator(Some(3), 1), 3)? != anchor {
        return Ok(fail("P²(b1) at ℓ=3".into()));
    }
    Ok(Ok(()))
}

fn decomposition() -> Result<Outcome> {
    for l in [3u64, 5] {
        if let Some(r) = decomposition_check(60, l)?.into_iter().find(|r| !r.equal) {
            return Ok(fail(format!(
                "ℓ={l} w={}: {} vs {}",
                r.weight, r.lhs, r.rhs
            )));
        }
    }
    Ok(Ok(()))
}

fn duality() -> Result<Outcome> {
    for l in [3u64, 5, 7] {
        for w in (0..=12u32).step_by(2) {
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
                        let got = pair_through_diagonal(
                            &ZClass::basis(a, l)?,
                            &ZClass::basis(c, l)?,
                            &omega,
                        )?;
                        if got != u64::from(a.concat(c) == omega) {
                            return Ok(fail(format!("⟨z{a}·z{c}, u{omega}⟩ = {got}")));
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

fn newton() -> Result<Outcome> {
    for n in 2..=10 {
        for dims in enumerate(n, Predicate::All)
            .into_iter()
            .filter(|p| p.len() >= 2)
        {
            let x = ProjProduct::new(dims.parts().to_vec())?;
            let s = newton_class(&tangent_bundle(&x), n)?.deg();
            if s != BigInt::from(0) {
                return Ok(fail(format!("s_{n}({x}) = {s}")));
            }
        }
    }
    for w in (0..=16).step_by(2) {
        for omega in enumerate(w, Predicate::Even) {
            if !u_to_b_identity_holds(&omega)? {
                return Ok(fail(format!("u_to_b at {omega}")));
            }
        }
    }
    Ok(Ok(()))
}

fn criterion() -> Result<Outcome> {
    for l in [3u64, 5, 7] {
        let fam = stong_family(l, 20)?;
        if !msp_criterion(&fam, l, 20)?.pass {
            return Ok(fail(format!("family fails at ℓ={l}")));
        }
        for d in 1..=20 {
            let bad = fam.with_scaled_entry(d, &BigInt::from(l))?;
            let failed: Vec<u64> = msp_criterion(&bad, l, 20)?
                .failures()
                .map(|r| r.d)
                .collect();
            if failed != vec![d] {
                return Ok(fail(format!("scaling d={d} at ℓ={l} fails {failed:?}")));
            }
        }
    }
    Ok(Ok(()))
}

fn ranks() -> Result<Outcome> {
    for d in 1..=30u64 {
        let p = BigUint::from(enumerate(d as u32, Predicate::All).len());
        if e2_rank(d)? != p || e2_rank_by_generators(d, 3)? != p {
            return Ok(fail(format!("d={d}")));
        }
    }
    Ok(Ok(()))
}

pub fn run(cap: u64) -> Result<Report> {
    let checks: Vec<(&str, Result<Outcome>)> = vec![
        ("valuation theorem", valuations()),
        ("congruence", congruences()),
        ("closed form against expansion", closed_form(cap)),
        ("steenrod fast path against roots", steenrod()),
        ("decomposition identity", decomposition()),
        ("duality through the diagonal", duality()),
        ("newton classes and u_to_b", newton()),
        ("criterion end to end", criterion()),
        ("rank bookkeeping", ranks()),
    ];
    let mut lines = Vec::new();
    let mut table = Table::new(vec!["check", "pass", "detail"]);
    for (name, outcome) in checks {
        let (pass, detail) = match outcome? {
            Ok(()) => (true, None),
            Err(why) => (false, Some(why)),
        };
        table.push(vec![
            name.into(),
            pass.to_string(),
            detail.clone().unwrap_or_default(),
        ]);
        lines.push(CheckLine {
            name: name.into(),
            pass,
            detail,
        });
    }
    let ok = lines.iter().all(|l| l.pass);
    Report::new(&lines, table, ok)
}
