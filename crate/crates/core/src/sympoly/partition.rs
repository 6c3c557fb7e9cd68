use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An integer partition: a nonincreasing tuple of positive parts.
///
/// Partitions are totally ordered by size, then lexicographically
/// *descending*, so `() < (1) < (2) < (1,1) < (3) < (2,1) < (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, stripping trailing zeros.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::OutOfRange(format!("{parts:?} is not nonincreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(k)`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Partition::empty()
        } else {
            Partition(vec![k])
        }
    }

    /// The one-column partition `(1, ..., 1)` with `k` ones.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `|mu|`, the sum of the parts.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to length `m`.
    pub fn padded(&self, m: usize) -> Vec<u32> {
        (0..m.max(self.len())).map(|i| self.part(i)).collect()
    }

    /// Containment order: `self <= other` iff every part of `self` is at
    /// most the corresponding part of `other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(other.0.iter()).all(|(s, k)| s <= k)
    }

    /// The partition with one more box in row `i` (0-based), if the result
    /// is still nonincreasing.
    pub fn add_box(&self, i: usize) -> Option<Partition> {
        if i > self.len() {
            return None;
        }
        if i > 0 && self.part(i - 1) == self.part(i) {
            return None;
        }
        let mut parts = self.0.clone();
        if i == self.len() {
            parts.push(1);
        } else {
            parts[i] += 1;
        }
        Some(Partition(parts))
    }

    pub fn reversed_negated(&self) -> Vec<i64> {
        self.0.iter().rev().map(|&p| -(p as i64)).collect()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
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

/// Partitions of `size` with at most `max_len` parts, lexicographically
/// descending.
pub fn partitions_of(size: u32, max_len: usize) -> Vec<Partition> {
    fn fill(remaining: u32, cap: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            prefix.push(p);
            fill(remaining - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(size, size, max_len, &mut Vec::new(), &mut out);
    out
}

/// All partitions with `|sigma| <= t` and at most `m` parts, in canonical
/// order, starting with the empty partition.
pub fn partitions_up_to(t: u32, m: usize) -> Vec<Partition> {
    (0..=t).flat_map(|s| partitions_of(s, m)).collect()
}
