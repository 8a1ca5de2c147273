//! Integer partitions: validated construction, enumeration, conjugation and
//! the `6,5,5,4,3` text format.
//!
//! A partition is stored largest part first. Parts are addressed 1-based
//! through [`Partition::part`], which returns 0 outside `1..=len`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates `values` as a weakly decreasing list of positive integers.
    /// The input is never reordered.
    pub fn new(values: &[i64]) -> Result<Self> {
        let reject = |reason: String| Error::InvalidPartition { values: values.to_vec(), reason };
        let mut parts = Vec::with_capacity(values.len());
        for (idx, &v) in values.iter().enumerate() {
            if v <= 0 {
                return Err(reject(format!("part {} is {v}, parts must be positive", idx + 1)));
            }
            let v = u32::try_from(v).map_err(|_| reject(format!("part {v} is too large")))?;
            if let Some(&prev) = parts.last() {
                if v > prev {
                    return Err(reject(format!("parts must be weakly decreasing, found {prev} before {v}")));
                }
            }
            parts.push(v);
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from arbitrary positive parts by sorting them.
    /// Zeros are dropped.
    pub fn from_multiset(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Caller guarantees the parts are positive and weakly decreasing.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// The part λ_j, 1-based, with λ_j = 0 for j ≤ 0 or j > len.
    pub fn part(&self, j: i64) -> u32 {
        if j <= 0 {
            return 0;
        }
        self.parts.get((j - 1) as usize).copied().unwrap_or(0)
    }

    pub fn smallest(&self) -> u32 {
        self.parts.last().copied().unwrap_or(0)
    }

    pub fn count_of(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let conj = (1..=width).map(|c| self.parts.iter().take_while(|&&p| p >= c).count() as u32).collect();
        Partition { parts: conj }
    }

    /// Rows of `#`, one line per part; the empty partition renders as `-`.
    pub fn diagram(&self) -> String {
        if self.parts.is_empty() {
            return "-\n".to_string();
        }
        let mut out = String::new();
        for &p in &self.parts {
            out.extend(std::iter::repeat_n('#', p as usize));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        for (idx, p) in self.parts.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let values = s
            .split(',')
            .map(|tok| tok.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(s.to_string()))?;
        Partition::new(&values)
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first,
/// `(1^n)` last. Exactly one item, the empty partition, for `n = 0`.
pub fn partitions(n: u32) -> Partitions {
    Partitions { current: if n == 0 { Some(Vec::new()) } else { Some(vec![n]) } }
}

#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        self.current = successor(&current);
        Some(Partition::from_sorted_unchecked(current))
    }
}

fn successor(parts: &[u32]) -> Option<Vec<u32>> {
    // rightmost part larger than 1
    let pos = parts.iter().rposition(|&p| p > 1)?;
    let ones = (parts.len() - pos - 1) as u32;
    let mut next = parts[..pos].to_vec();
    let cap = parts[pos] - 1;
    let mut rest = ones + 1 + cap;
    while rest > 0 {
        let take = rest.min(cap);
        next.push(take);
        rest -= take;
    }
    Some(next)
}

/// Every partition of weight `0..=max_weight`, grouped by weight.
pub fn partitions_up_to(max_weight: u32) -> impl Iterator<Item = Partition> {
    (0..=max_weight).flat_map(partitions)
}
