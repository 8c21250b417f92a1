//! Integer partitions.
//!
//! A [`Partition`] is an immutable weakly decreasing list of positive parts.
//! The derived `Ord` is lexicographic on the part list, which is the order
//! used for canonical output (largest first, see [`enumerate`]).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::valuation::power_minus_one_exponent;
use crate::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Checked constructor: parts must be positive and weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing || parts.contains(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts the given multiset of parts; zero parts are dropped.
    pub fn from_multiset(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(n)`, or the empty partition for `n = 0`.
    pub fn single(n: u32) -> Self {
        Partition::from_multiset([n])
    }

    /// `(part, part, …)` with `count` copies.
    pub fn repeated(part: u32, count: usize) -> Self {
        Partition::from_multiset(std::iter::repeat_n(part, count))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }

    /// True iff some part has the form `ℓᵐ − 1` with `m ≥ 1`.
    pub fn is_ladic(&self, l: u64) -> bool {
        self.0
            .iter()
            .any(|&p| power_minus_one_exponent(u64::from(p), l).is_some())
    }

    /// Multiset union, reordered to be non-increasing.
    pub fn concat(&self, other: &Partition) -> Partition {
        Partition::from_multiset(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Every part divided by two. Errors on a partition with an odd part.
    pub fn halve(&self) -> Result<Partition> {
        if !self.is_even() {
            return Err(Error::NotEven(self.to_string()));
        }
        Ok(Partition(self.0.iter().map(|p| p / 2).collect()))
    }

    pub fn double(&self) -> Partition {
        Partition(self.0.iter().map(|p| 2 * p).collect())
    }

    /// The transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32)
                .collect(),
        )
    }

    /// Part → multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// All sub-multisets, each exactly once, with their complements.
    pub fn splits(&self) -> Vec<(Partition, Partition)> {
        let mult: Vec<(u32, usize)> = self.multiplicities().into_iter().collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; mult.len()];
        loop {
            let left = Partition::from_multiset(
                mult.iter()
                    .zip(&choice)
                    .flat_map(|(&(p, _), &c)| std::iter::repeat_n(p, c)),
            );
            let right = Partition::from_multiset(
                mult.iter()
                    .zip(&choice)
                    .flat_map(|(&(p, m), &c)| std::iter::repeat_n(p, m - c)),
            );
            out.push((left, right));
            // odometer increment
            let mut i = 0;
            loop {
                if i == mult.len() {
                    return out;
                }
                if choice[i] < mult[i].1 {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Parses `"(4,2)"`, `"4,2"` or `"()"`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("{s}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    All,
    Even,
    /// Even and not ℓ-adic for the given prime.
    EvenNonLadic(u64),
}

impl Predicate {
    pub fn accepts(&self, p: &Partition) -> bool {
        match *self {
            Predicate::All => true,
            Predicate::Even => p.is_even(),
            Predicate::EvenNonLadic(l) => p.is_even() && !p.is_ladic(l),
        }
    }

    fn part_allowed(&self, part: u32) -> bool {
        match *self {
            Predicate::All => true,
            Predicate::Even => part.is_multiple_of(2),
            Predicate::EvenNonLadic(l) => {
                part.is_multiple_of(2) && power_minus_one_exponent(u64::from(part), l).is_none()
            }
        }
    }
}

/// All partitions of `w` satisfying `pred`, in descending lexicographic order.
///
/// Each predicate is a condition on individual parts, so filtering happens
/// during generation rather than afterwards.
pub fn enumerate(w: u32, pred: Predicate) -> Vec<Partition> {
    fn go(rest: u32, max: u32, pred: Predicate, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            if !pred.part_allowed(part) {
                continue;
            }
            cur.push(part);
            go(rest - part, part, pred, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w, w, pred, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `w` with at most `max_len` parts, descending lexicographic.
pub fn enumerate_bounded_length(w: u32, max_len: usize) -> Vec<Partition> {
    fn go(rest: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w, w, max_len, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn predicates() {
        assert!(p(&[4, 2]).is_even());
        assert!(!p(&[3, 2]).is_even());
        assert!(Partition::empty().is_even());
        assert!(p(&[2]).is_ladic(3));
        assert!(!p(&[4]).is_ladic(3));
        assert!(p(&[8, 4]).is_ladic(3));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(p(&[4]).concat(&p(&[2])), p(&[4, 2]));
        assert_eq!(Partition::empty().concat(&p(&[3, 1])), p(&[3, 1]));
        assert_eq!(p(&[2, 2]).concat(&p(&[4])), p(&[4, 2, 2]));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(4, Predicate::Even), vec![p(&[4]), p(&[2, 2])]);
        assert_eq!(enumerate(8, Predicate::EvenNonLadic(3)), vec![p(&[4, 4])]);
        assert!(enumerate(3, Predicate::Even).is_empty());
        assert_eq!(enumerate(0, Predicate::All), vec![Partition::empty()]);
        assert_eq!(
            enumerate(4, Predicate::All),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
    }

    #[test]
    fn invalid_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[4, 2]).halve().unwrap(), p(&[2, 1]));
        assert!(p(&[3]).halve().is_err());
    }

    #[test]
    fn conjugate_and_parse() {
        assert_eq!(p(&[4, 2, 1]).conjugate(), p(&[3, 2, 1, 1]));
        assert_eq!("(4,2)".parse::<Partition>().unwrap(), p(&[4, 2]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[4, 2]).to_string(), "(4,2)");
    }

    #[test]
    fn splits_of_repeated_parts() {
        let s = p(&[2, 2]).splits();
        assert_eq!(s.len(), 3);
        let s = p(&[4, 2]).splits();
        assert_eq!(s.len(), 4);
    }
}
