//! JSON shapes shared by the subcommands, and readers for them.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use cobcalc::criterion::{CandidateFamily, DegreeRecord, GeneratorVerdict};
use cobcalc::symfun::{BMonomial, BPoly};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// One term of a sparse b-polynomial: `coeff · ∏ b_i^{exponents[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseTerm {
    pub exponents: BTreeMap<u32, u32>,
    pub coeff: String,
}

/// Terms in display order: highest weight first.
pub fn bpoly_to_sparse(f: &BPoly) -> Vec<SparseTerm> {
    let mut terms: Vec<(&BMonomial, &BigInt)> = f.terms().iter().collect();
    terms.sort_by(|a, b| b.0.weight().cmp(&a.0.weight()).then(b.0.cmp(a.0)));
    terms
        .into_iter()
        .map(|(m, c)| SparseTerm {
            exponents: m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| (i as u32 + 1, k))
                .collect(),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn sparse_to_bpoly(terms: &[SparseTerm], modulus: Option<u64>) -> Result<BPoly> {
    let mut out = BPoly::zero(modulus);
    for t in terms {
        let len = t.exponents.keys().max().copied().unwrap_or(0) as usize;
        let mut exps = vec![0; len];
        for (&i, &k) in &t.exponents {
            if i == 0 {
                bail!("b0 is not a generator");
            }
            exps[i as usize - 1] = k;
        }
        let c: BigInt = t
            .coeff
            .parse()
            .with_context(|| format!("bad coefficient {:?}", t.coeff))?;
        out.add_term(BMonomial::new(exps), c);
    }
    Ok(out)
}

/// `{"kind": "msp", "entries": {"1": "-48", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub kind: String,
    pub entries: BTreeMap<u64, String>,
}

impl FamilyFile {
    pub fn from_family(fam: &CandidateFamily) -> Self {
        FamilyFile {
            kind: fam.kind().to_string(),
            entries: fam
                .entries()
                .iter()
                .map(|(&d, v)| (d, v.to_string()))
                .collect(),
        }
    }

    pub fn to_family(&self) -> Result<CandidateFamily> {
        let kind = self.kind.parse()?;
        let entries = self
            .entries
            .iter()
            .map(|(&d, v)| {
                let n: BigInt = v
                    .parse()
                    .with_context(|| format!("entry {d}: bad integer {v:?}"))?;
                Ok((d, n))
            })
            .collect::<Result<_>>()?;
        Ok(CandidateFamily::new(kind, entries)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub prime: u64,
    pub d: u64,
    pub required: u32,
    pub observed: Option<u32>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl From<&DegreeRecord> for RecordJson {
    fn from(r: &DegreeRecord) -> Self {
        RecordJson {
            prime: r.prime,
            d: r.d,
            required: r.required,
            observed: r.observed,
            pass: r.pass,
            reason: r.reason.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub kind: String,
    pub primes: Vec<u64>,
    pub d_max: u64,
    pub pass: bool,
    pub records: Vec<RecordJson>,
    pub family: FamilyFile,
}

impl VerdictJson {
    pub fn new(v: &GeneratorVerdict, fam: &CandidateFamily) -> Self {
        VerdictJson {
            kind: v.kind.to_string(),
            primes: v.primes.clone(),
            d_max: v.d_max,
            pass: v.pass,
            records: v.records.iter().map(RecordJson::from).collect(),
            family: FamilyFile::from_family(fam),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnumberRow {
    pub d: u64,
    pub factors: Vec<u32>,
    pub s: String,
    pub nu: u64,
    pub expected: u64,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bruteforce: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompRow {
    pub weight: u64,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub d: u64,
    pub partitions: String,
    pub e2_rank: String,
    pub e2_rank_by_generators: String,
    pub mgl_rank: String,
    pub mgl_rank_by_enumeration: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}
