//! Generator detection by ℓ-adic valuations of characteristic numbers.
//!
//! A family `{x_d}` generates locally at ℓ iff the valuation of its
//! characteristic number is 1 in the special degrees and 0 elsewhere. The
//! special degrees are `d = ℓʳ − 1` for MGL and `2d = ℓʳ − 1` for MSp.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::stong::valuation_table;
use crate::valuation::{check_odd_prime, nu, odd_primes_up_to, power_minus_one_exponent};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Msp,
    Mgl,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Msp => "msp",
            FamilyKind::Mgl => "mgl",
        })
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "msp" => Ok(FamilyKind::Msp),
            "mgl" => Ok(FamilyKind::Mgl),
            _ => Err(Error::Parse(format!("unknown family kind {s:?}"))),
        }
    }
}

/// Characteristic numbers indexed by degree `d ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateFamily {
    kind: FamilyKind,
    entries: BTreeMap<u64, BigInt>,
}

impl CandidateFamily {
    pub fn new(kind: FamilyKind, entries: BTreeMap<u64, BigInt>) -> Result<Self> {
        if entries.contains_key(&0) {
            return Err(Error::Domain("family indices start at 1".into()));
        }
        Ok(CandidateFamily { kind, entries })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn entries(&self) -> &BTreeMap<u64, BigInt> {
        &self.entries
    }

    pub fn entry(&self, d: u64) -> Option<&BigInt> {
        self.entries.get(&d)
    }

    pub fn max_d(&self) -> u64 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    /// A copy with the entry at `d` multiplied by `factor`.
    pub fn with_scaled_entry(&self, d: u64, factor: &BigInt) -> Result<Self> {
        let mut out = self.clone();
        let e = out
            .entries
            .get_mut(&d)
            .ok_or_else(|| Error::Domain(format!("family has no entry at d={d}")))?;
        *e *= factor;
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRecord {
    pub prime: u64,
    pub d: u64,
    pub required: u32,
    /// `None` when the entry is zero.
    pub observed: Option<u32>,
    pub pass: bool,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorVerdict {
    pub kind: FamilyKind,
    pub primes: Vec<u64>,
    pub d_max: u64,
    pub records: Vec<DegreeRecord>,
    pub pass: bool,
}

impl GeneratorVerdict {
    pub fn failures(&self) -> impl Iterator<Item = &DegreeRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// Required valuation at `d`: 1 in the special degrees, else 0.
pub fn required_valuation(kind: FamilyKind, d: u64, l: u64) -> u32 {
    let n = match kind {
        FamilyKind::Mgl => d,
        FamilyKind::Msp => 2 * d,
    };
    u32::from(power_minus_one_exponent(n, l).is_some())
}

fn local_records(fam: &CandidateFamily, l: u64, d_max: u64) -> Result<Vec<DegreeRecord>> {
    check_odd_prime(l)?;
    (1..=d_max)
        .map(|d| {
            let value = fam
                .entry(d)
                .ok_or_else(|| Error::Domain(format!("family has no entry at d={d}")))?;
            let required = required_valuation(fam.kind, d, l);
            Ok(if value.is_zero() {
                DegreeRecord {
                    prime: l,
                    d,
                    required,
                    observed: None,
                    pass: false,
                    reason: Some("zero characteristic number".into()),
                }
            } else {
                let observed = nu(value, l)?;
                let pass = observed == required;
                DegreeRecord {
                    prime: l,
                    d,
                    required,
                    observed: Some(observed),
                    pass,
                    reason: (!pass)
                        .then(|| format!("required ν={required}, observed ν={observed}")),
                }
            })
        })
        .collect()
}

fn local(fam: &CandidateFamily, kind: FamilyKind, l: u64, d_max: u64) -> Result<GeneratorVerdict> {
    if fam.kind != kind {
        return Err(Error::Domain(format!(
            "expected a {kind} family, got {}",
            fam.kind
        )));
    }
    let records = local_records(fam, l, d_max)?;
    let pass = records.iter().all(|r| r.pass);
    Ok(GeneratorVerdict {
        kind,
        primes: vec![l],
        d_max,
        records,
        pass,
    })
}

pub fn mgl_criterion(fam: &CandidateFamily, l: u64, d_max: u64) -> Result<GeneratorVerdict> {
    local(fam, FamilyKind::Mgl, l, d_max)
}

pub fn msp_criterion(fam: &CandidateFamily, l: u64, d_max: u64) -> Result<GeneratorVerdict> {
    local(fam, FamilyKind::Msp, l, d_max)
}

/// The MSp criterion at every odd prime `ℓ ≤ prime_bound` not in `excluded`,
/// over the whole index range of the family. Only finitely many primes can
/// ever be checked; the bound is part of the verdict.
pub fn global_criterion(
    fam: &CandidateFamily,
    prime_bound: u64,
    excluded: &[u64],
) -> Result<GeneratorVerdict> {
    if prime_bound < 3 {
        return Err(Error::Domain(format!(
            "prime bound must be at least 3, got {prime_bound}"
        )));
    }
    let primes: Vec<u64> = odd_primes_up_to(prime_bound)
        .into_iter()
        .filter(|p| !excluded.contains(p))
        .collect();
    let d_max = fam.max_d();
    let mut records = Vec::new();
    for &l in &primes {
        records.extend(msp_criterion(fam, l, d_max)?.records);
    }
    let pass = records.iter().all(|r| r.pass);
    Ok(GeneratorVerdict {
        kind: FamilyKind::Msp,
        primes,
        d_max,
        records,
        pass,
    })
}

/// `|s_{2d}(Y_{2d})|` for `d = 1, …, d_max` with `Y` built for the prime ℓ.
pub fn stong_family(l: u64, d_max: u64) -> Result<CandidateFamily> {
    let entries = valuation_table(l, d_max)?
        .into_iter()
        .map(|row| (row.d, row.s_number.abs()))
        .collect();
    CandidateFamily::new(FamilyKind::Msp, entries)
}

/// A single family meant to pass at every odd prime up to `prime_bound`.
///
/// The variety `Y_{2d}` depends on ℓ, so no one of them works for all
/// primes at once. In each degree this takes `g`, the gcd of the numbers
/// `|s_{2d}|` over the primes (an integer combination of the `Y`'s), and
/// multiplies it by `q^{req(q) − ν_q(g)}` for each prime `q`, which only
/// raises valuations that fell short.
pub fn global_stong_family(d_max: u64, prime_bound: u64) -> Result<CandidateFamily> {
    let primes = odd_primes_up_to(prime_bound);
    if primes.is_empty() {
        return Err(Error::Domain(format!("no odd primes up to {prime_bound}")));
    }
    let tables = primes
        .iter()
        .map(|&l| stong_family(l, d_max))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = BTreeMap::new();
    for d in 1..=d_max {
        let g = tables
            .iter()
            .map(|t| t.entry(d).expect("row present").clone())
            .fold(BigInt::zero(), |acc, s| acc.gcd(&s));
        let mut c = g.clone();
        for &q in &primes {
            let req = required_valuation(FamilyKind::Msp, d, q);
            let have = nu(&g, q)?;
            for _ in have..req {
                c *= q;
            }
        }
        entries.insert(d, c);
    }
    CandidateFamily::new(FamilyKind::Msp, entries)
}

/// Embed an MSp family into MGL indexing: degree `2d` carries the MSp entry
/// at `d`, odd degrees carry 1.
pub fn msp_as_mgl(fam: &CandidateFamily) -> Result<CandidateFamily> {
    let mut entries = BTreeMap::new();
    for (&d, v) in &fam.entries {
        entries.insert(2 * d, v.clone());
        entries.insert(2 * d - 1, BigInt::one());
    }
    CandidateFamily::new(FamilyKind::Mgl, entries)
}
