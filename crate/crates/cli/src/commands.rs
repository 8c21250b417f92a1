use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cobcalc::adams::{
    decomposition_check, e2_rank, e2_rank_by_generators, mgl_rank, mgl_rank_by_enumeration,
};
use cobcalc::criterion::{
    global_criterion, global_stong_family, mgl_criterion, msp_criterion, stong_family,
    CandidateFamily, FamilyKind,
};
use cobcalc::partition::{enumerate, Predicate};
use cobcalc::steenrod::{bockstein, power_op};
use cobcalc::stong::{s_number_bruteforce_capped, valuation_table};
use cobcalc::symfun::{u_to_b, BPoly};
use cobcalc::Partition;
use num_bigint::BigUint;

use crate::args::{Command, PredicateArg};
use crate::chow_expr::{evaluate, ChowRequest};
use crate::config::{check_prime, RunConfig};
use crate::report::{Report, Table};
use crate::schema::{bpoly_to_sparse, DecompRow, FamilyFile, RankRow, SnumberRow, VerdictJson};
use crate::selftest;

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Report> {
    match cmd {
        Command::Snumbers {
            prime,
            max_d,
            check_bruteforce,
        } => snumbers(
            cfg.prime(*prime)?,
            cfg.max_d(*max_d)?,
            check_bruteforce.then_some(cfg.bruteforce_cap),
        ),
        Command::VerifyGenerators {
            prime,
            all_primes_up_to,
            max_d,
            family,
            exclude,
        } => verify_generators(
            cfg,
            *prime,
            *all_primes_up_to,
            *max_d,
            family.as_deref(),
            exclude,
        ),
        Command::Steenrod { prime, op, class } => steenrod(cfg.prime(*prime)?, op, class),
        Command::DecompCheck { prime, max_weight } => {
            decomp_check(cfg.prime(*prime)?, cfg.max_weight(*max_weight)?)
        }
        Command::Ranks { max_d, prime } => {
            let l = prime.unwrap_or(3);
            check_prime(l)?;
            ranks(cfg.max_d(*max_d)?, l)
        }
        Command::PartitionTools {
            weight,
            predicate,
            prime,
        } => partition_tools(*weight, *predicate, *prime),
        Command::UToB { omega } => u_to_b_report(omega),
        Command::Chow { expr, json } => chow(expr.as_deref(), json.as_deref()),
        Command::SelfTest => selftest::run(cfg.bruteforce_cap),
    }
}

pub fn snumbers(l: u64, d_max: u64, brute_cap: Option<u64>) -> Result<Report> {
    let mut rows = Vec::new();
    let mut table = Table::new(vec!["d", "factors", "s", "nu", "expected", "match"]);
    let mut ok = true;
    for row in valuation_table(l, d_max)? {
        let bruteforce = match brute_cap {
            Some(cap) if row.factors.total_dim() <= cap => {
                let b = s_number_bruteforce_capped(&row.factors, cap)?;
                ok &= b == row.s_number;
                Some(b.to_string())
            }
            _ => None,
        };
        ok &= row.matches();
        let r = SnumberRow {
            d: row.d,
            factors: row.factors.dims().to_vec(),
            s: row.s_number.to_string(),
            nu: row.valuation,
            expected: row.expected,
            matches: row.matches(),
            bruteforce,
        };
        table.push(vec![
            r.d.to_string(),
            row.factors.to_string(),
            r.s.clone(),
            r.nu.to_string(),
            r.expected.to_string(),
            r.matches.to_string(),
        ]);
        rows.push(r);
    }
    Report::new(&rows, table, ok)
}

fn read_family(path: &Path) -> Result<CandidateFamily> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading family file {}", path.display()))?;
    let file: FamilyFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing family file {}", path.display()))?;
    file.to_family()
}

fn verify_generators(
    cfg: &RunConfig,
    prime: Option<u64>,
    bound: Option<u64>,
    max_d: Option<u64>,
    family: Option<&Path>,
    exclude: &[u64],
) -> Result<Report> {
    let loaded = family.map(read_family).transpose()?;
    let d_max = match (max_d, &loaded) {
        (None, Some(f)) => f.max_d(),
        _ => cfg.max_d(max_d)?,
    };
    let (verdict, fam) = match bound {
        Some(bound) => {
            let fam = match loaded {
                Some(f) => f,
                None => global_stong_family(d_max, bound)?,
            };
            if fam.kind() != FamilyKind::Msp {
                bail!("--all-primes-up-to checks MSp families only");
            }
            let fam = truncate(&fam, d_max)?;
            (global_criterion(&fam, bound, exclude)?, fam)
        }
        None => {
            let l = cfg.prime(prime)?;
            let fam = match loaded {
                Some(f) => f,
                None => stong_family(l, d_max)?,
            };
            let verdict = match fam.kind() {
                FamilyKind::Msp => msp_criterion(&fam, l, d_max)?,
                FamilyKind::Mgl => mgl_criterion(&fam, l, d_max)?,
            };
            (verdict, fam)
        }
    };
    let mut table = Table::new(vec!["prime", "d", "required", "observed", "pass", "reason"]);
    for r in &verdict.records {
        table.push(vec![
            r.prime.to_string(),
            r.d.to_string(),
            r.required.to_string(),
            r.observed.map_or("-".into(), |v| v.to_string()),
            r.pass.to_string(),
            r.reason.clone().unwrap_or_default(),
        ]);
    }
    Report::new(&VerdictJson::new(&verdict, &fam), table, verdict.pass)
}

fn truncate(fam: &CandidateFamily, d_max: u64) -> Result<CandidateFamily> {
    let entries = fam
        .entries()
        .range(..=d_max)
        .map(|(&d, v)| (d, v.clone()))
        .collect();
    Ok(CandidateFamily::new(fam.kind(), entries)?)
}

fn parse_op(op: &str) -> Result<Option<i64>> {
    let op = op.trim();
    if op.eq_ignore_ascii_case("beta") {
        return Ok(None);
    }
    let digits = op
        .strip_prefix('P')
        .or_else(|| op.strip_prefix('p'))
        .unwrap_or(op);
    let i = digits
        .parse()
        .with_context(|| format!("unrecognised operation {op:?}"))?;
    Ok(Some(i))
}

fn sparse_table(f: &BPoly) -> Table {
    let mut table = Table::new(vec!["monomial", "coeff"]);
    for t in bpoly_to_sparse(f) {
        let m: Vec<String> = t
            .exponents
            .iter()
            .map(|(i, k)| format!("b{i}^{k}"))
            .collect();
        let m = if m.is_empty() {
            "1".to_string()
        } else {
            m.join("*")
        };
        table.push(vec![m, t.coeff]);
    }
    table
}

pub fn steenrod(l: u64, op: &str, class: &str) -> Result<Report> {
    let f: BPoly = class.parse()?;
    let out = match parse_op(op)? {
        Some(i) => power_op(i, &f, l)?,
        None => bockstein(&f, l)?,
    };
    Report::new(&bpoly_to_sparse(&out), sparse_table(&out), true)
}

pub fn decomp_check(l: u64, max_weight: u64) -> Result<Report> {
    let mut rows = Vec::new();
    let mut table = Table::new(vec!["weight", "lhs", "rhs", "equal"]);
    for r in decomposition_check(max_weight, l)? {
        table.push(vec![
            r.weight.to_string(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.equal.to_string(),
        ]);
        rows.push(DecompRow {
            weight: r.weight,
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            equal: r.equal,
        });
    }
    let ok = rows.iter().all(|r| r.equal);
    Report::new(&rows, table, ok)
}

pub fn ranks(d_max: u64, l: u64) -> Result<Report> {
    let d_max = u32::try_from(d_max).context("--max-d too large")?;
    let mut rows = Vec::new();
    let mut table = Table::new(vec![
        "d",
        "partitions",
        "e2",
        "e2 by generators",
        "mgl",
        "mgl by enumeration",
        "equal",
    ]);
    for d in 1..=d_max {
        let p = BigUint::from(enumerate(d, Predicate::All).len());
        let d = u64::from(d);
        let vals = [
            e2_rank(d)?,
            e2_rank_by_generators(d, l)?,
            mgl_rank(d)?,
            mgl_rank_by_enumeration(d)?,
        ];
        let equal = vals.iter().all(|v| *v == p);
        let [a, b, c, e] = vals.map(|v| v.to_string());
        table.push(vec![
            d.to_string(),
            p.to_string(),
            a.clone(),
            b.clone(),
            c.clone(),
            e.clone(),
            equal.to_string(),
        ]);
        rows.push(RankRow {
            d,
            partitions: p.to_string(),
            e2_rank: a,
            e2_rank_by_generators: b,
            mgl_rank: c,
            mgl_rank_by_enumeration: e,
            equal,
        });
    }
    let ok = rows.iter().all(|r| r.equal);
    Report::new(&rows, table, ok)
}

pub fn partition_tools(w: u32, pred: PredicateArg, prime: Option<u64>) -> Result<Report> {
    let pred = match pred {
        PredicateArg::All => Predicate::All,
        PredicateArg::Even => Predicate::Even,
        PredicateArg::EvenNonAdic => {
            let l = prime.context("even-non-adic needs --prime")?;
            check_prime(l)?;
            Predicate::EvenNonLadic(l)
        }
    };
    let parts: Vec<Vec<u32>> = enumerate(w, pred)
        .iter()
        .map(|p| p.parts().to_vec())
        .collect();
    let mut table = Table::new(vec!["parts"]);
    for p in &parts {
        table.push(vec![p
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")]);
    }
    Report::new(&parts, table, true)
}

pub fn u_to_b_report(omega: &str) -> Result<Report> {
    let omega: Partition = omega.parse()?;
    let f = u_to_b(&omega)?;
    Report::new(&bpoly_to_sparse(&f), sparse_table(&f), true)
}

pub fn chow(path: Option<&Path>, inline: Option<&str>) -> Result<Report> {
    let text = match (path, inline) {
        (_, Some(s)) => s.to_string(),
        (Some(p), None) if p == Path::new("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        (Some(p), None) => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        (None, None) => bail!("give --expr FILE or --json TEXT"),
    };
    let req: ChowRequest = serde_json::from_str(&text).context("parsing Chow expression")?;
    let resp = evaluate(&req)?;
    let mut table = Table::new(vec!["exponents", "coeff"]);
    if let Some(deg) = &resp.degree {
        table.headers = vec!["degree"];
        table.push(vec![deg.clone()]);
    }
    for t in resp.class.iter().flatten() {
        let e: Vec<String> = t.exponents.iter().map(u32::to_string).collect();
        table.push(vec![e.join(" "), t.coeff.clone()]);
    }
    Report::new(&resp, table, true)
}
