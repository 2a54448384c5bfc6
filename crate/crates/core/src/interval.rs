//! Finite sets of positive integers stored as sorted runs of consecutive
//! integers.
//!
//! Several objects in this crate are astronomically large but highly
//! structured (maximal Schreier sets, the blocks of the interval partition,
//! dyadic windows), so sets are kept as closed intervals `[lo, hi]` and every
//! operation works run-by-run. The element type is generic so that the same
//! code serves `u64` indices and `BigUint` indices.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Element type usable inside an [`IntervalSet`].
pub trait IndexInt:
    Clone + Ord + fmt::Debug + fmt::Display + Zero + One + Add<Output = Self> + Sub<Output = Self>
{
    fn to_u64_checked(&self) -> Option<u64>;
    fn from_u64(v: u64) -> Self;
    fn to_json(&self) -> serde_json::Value;
}

impl IndexInt for u64 {
    fn to_u64_checked(&self) -> Option<u64> {
        Some(*self)
    }
    fn from_u64(v: u64) -> Self {
        v
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(*self)
    }
}

impl IndexInt for BigUint {
    fn to_u64_checked(&self) -> Option<u64> {
        self.to_u64()
    }
    fn from_u64(v: u64) -> Self {
        BigUint::from(v)
    }
    fn to_json(&self) -> serde_json::Value {
        match self.to_u64() {
            Some(v) => serde_json::Value::from(v),
            None => {
                let n: serde_json::Number = self
                    .to_string()
                    .parse()
                    .expect("decimal digits form a JSON number");
                serde_json::Value::Number(n)
            }
        }
    }
}

/// Sorted, pairwise disjoint, non-adjacent closed intervals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet<T: IndexInt = u64> {
    runs: Vec<(T, T)>,
}

impl<T: IndexInt> fmt::Debug for IntervalSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (lo, hi)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if lo == hi {
                write!(f, "{lo}")?;
            } else {
                write!(f, "{lo}..={hi}")?;
            }
        }
        f.write_str("}")
    }
}

impl<T: IndexInt> IntervalSet<T> {
    pub fn empty() -> Self {
        IntervalSet { runs: Vec::new() }
    }

    /// The interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: T, hi: T) -> Self {
        if lo > hi {
            return Self::empty();
        }
        IntervalSet {
            runs: vec![(lo, hi)],
        }
    }

    /// Builds a set from arbitrary (possibly overlapping, unsorted) intervals.
    pub fn from_intervals(intervals: impl IntoIterator<Item = (T, T)>) -> Self {
        let mut runs: Vec<(T, T)> = intervals.into_iter().filter(|(lo, hi)| lo <= hi).collect();
        runs.sort();
        let mut merged: Vec<(T, T)> = Vec::with_capacity(runs.len());
        for (lo, hi) in runs {
            if let Some(last) = merged.last_mut() {
                if lo <= last.1.clone() + T::one() {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            merged.push((lo, hi));
        }
        IntervalSet { runs: merged }
    }

    pub fn runs(&self) -> &[(T, T)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Cardinality.
    pub fn len(&self) -> T {
        self.runs
            .iter()
            .fold(T::zero(), |acc, (lo, hi)| acc + (hi.clone() - lo.clone()) + T::one())
    }

    pub fn min(&self) -> Option<&T> {
        self.runs.first().map(|r| &r.0)
    }

    pub fn max(&self) -> Option<&T> {
        self.runs.last().map(|r| &r.1)
    }

    pub fn contains(&self, v: &T) -> bool {
        let idx = self.runs.partition_point(|(_, hi)| hi < v);
        idx < self.runs.len() && &self.runs[idx].0 <= v
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.runs.iter().chain(other.runs.iter()).cloned())
    }

    /// `|F| <= min F`, with the empty set admissible.
    pub fn is_schreier(&self) -> bool {
        match self.min() {
            None => true,
            Some(m) => &self.len() <= m,
        }
    }

    /// Non-empty with `|F| = min F`.
    pub fn is_maximal_schreier(&self) -> bool {
        match self.min() {
            None => false,
            Some(m) => &self.len() == m,
        }
    }

    /// Splits off the first `k` elements (in increasing order).
    pub fn split_first(&self, k: &T) -> (Self, Self) {
        let mut head = Vec::new();
        let mut tail = Vec::new();
        let mut remaining = k.clone();
        for (lo, hi) in &self.runs {
            if remaining.is_zero() {
                tail.push((lo.clone(), hi.clone()));
                continue;
            }
            let size = hi.clone() - lo.clone() + T::one();
            if size <= remaining {
                remaining = remaining - size;
                head.push((lo.clone(), hi.clone()));
            } else {
                let cut = lo.clone() + remaining.clone() - T::one();
                head.push((lo.clone(), cut.clone()));
                tail.push((cut + T::one(), hi.clone()));
                remaining = T::zero();
            }
        }
        (IntervalSet { runs: head }, IntervalSet { runs: tail })
    }

    /// The elements whose 1-based positions (in increasing order) lie in
    /// `positions`. Returns `None` when a position exceeds the cardinality.
    pub fn select(&self, positions: &IntervalSet<T>) -> Option<Self> {
        let mut out = Vec::new();
        // Cumulative count of elements before run `i`.
        let mut before = T::zero();
        let mut run_idx = 0;
        for (plo, phi) in &positions.runs {
            let mut pos = plo.clone();
            while pos <= *phi {
                // Advance to the run containing position `pos`.
                loop {
                    let (lo, hi) = self.runs.get(run_idx)?;
                    let size = hi.clone() - lo.clone() + T::one();
                    if pos <= before.clone() + size.clone() {
                        break;
                    }
                    before = before + size;
                    run_idx += 1;
                }
                let (lo, hi) = &self.runs[run_idx];
                let size = hi.clone() - lo.clone() + T::one();
                let run_end_pos = before.clone() + size;
                let last_pos = if phi < &run_end_pos {
                    phi.clone()
                } else {
                    run_end_pos
                };
                let start = lo.clone() + (pos.clone() - before.clone()) - T::one();
                let end = lo.clone() + (last_pos.clone() - before.clone()) - T::one();
                out.push((start, end));
                pos = last_pos + T::one();
            }
        }
        Some(Self::from_intervals(out))
    }

    /// Positions (1-based ranks) of the elements of `subset` inside `self`.
    /// Returns `None` when `subset` is not contained in `self`.
    pub fn positions_of(&self, subset: &IntervalSet<T>) -> Option<Self> {
        let mut out = Vec::new();
        let mut before = T::zero();
        let mut run_idx = 0;
        for (slo, shi) in &subset.runs {
            loop {
                let (lo, hi) = self.runs.get(run_idx)?;
                if slo <= hi {
                    if slo < lo || shi > hi {
                        return None;
                    }
                    let start = before.clone() + (slo.clone() - lo.clone()) + T::one();
                    let end = before.clone() + (shi.clone() - lo.clone()) + T::one();
                    out.push((start, end));
                    break;
                }
                before = before + (hi.clone() - lo.clone()) + T::one();
                run_idx += 1;
            }
        }
        Some(Self::from_intervals(out))
    }

    /// Greedy Schreier covering: repeatedly cut the first
    /// `min(min(rest), |rest|)` elements. Every block except possibly the last
    /// is a maximal Schreier set.
    pub fn greedy_schreier_cover(&self) -> Vec<Self> {
        let mut blocks = Vec::new();
        let mut rest = self.clone();
        while let Some(first) = rest.min().cloned() {
            let (head, tail) = rest.split_first(&first);
            blocks.push(head);
            rest = tail;
        }
        blocks
    }

    /// Elements as a JSON array; for `BigUint` values beyond `u64` the numbers
    /// are written with full precision.
    pub fn elements_json(&self) -> serde_json::Value
    where
        T: IndexInt,
    {
        let mut out = Vec::new();
        for (lo, hi) in &self.runs {
            let mut v = lo.clone();
            while v <= *hi {
                out.push(v.to_json());
                v = v + T::one();
            }
        }
        serde_json::Value::Array(out)
    }

    /// Runs as a JSON array of `[lo, hi]` pairs.
    pub fn runs_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.runs
                .iter()
                .map(|(lo, hi)| serde_json::Value::Array(vec![lo.to_json(), hi.to_json()]))
                .collect(),
        )
    }
}

impl IntervalSet<u64> {
    /// Builds a set from any collection of positive integers.
    pub fn from_elements(elements: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let mut runs: Vec<(u64, u64)> = Vec::new();
        for x in v {
            match runs.last_mut() {
                Some(last) if last.1 + 1 == x => last.1 = x,
                _ => runs.push((x, x)),
            }
        }
        IntervalSet { runs }
    }

    pub fn count(&self) -> u64 {
        self.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.runs.iter().flat_map(|&(lo, hi)| lo..=hi)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// Converts to big-integer form.
    pub fn to_big(&self) -> IntervalSet<BigUint> {
        IntervalSet {
            runs: self
                .runs
                .iter()
                .map(|&(lo, hi)| (BigUint::from(lo), BigUint::from(hi)))
                .collect(),
        }
    }
}

impl IntervalSet<BigUint> {
    /// Converts to `u64` form when every element fits.
    pub fn to_small(&self) -> Option<IntervalSet<u64>> {
        let runs = self
            .runs
            .iter()
            .map(|(lo, hi)| Some((lo.to_u64()?, hi.to_u64()?)))
            .collect::<Option<Vec<_>>>()?;
        Some(IntervalSet { runs })
    }
}

impl Serialize for IntervalSet<u64> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(None)?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> IntervalSet {
        IntervalSet::from_elements(v.iter().copied())
    }

    #[test]
    fn normalizes_runs() {
        let s = IntervalSet::from_intervals(vec![(5u64, 7), (1, 2), (3, 3), (9, 9)]);
        assert_eq!(s.runs(), &[(1, 3), (5, 7), (9, 9)]);
        assert_eq!(s.count(), 7);
        assert!(s.contains(&6));
        assert!(!s.contains(&4));
        let t = IntervalSet::from_intervals(vec![(1u64, 4), (5, 6)]);
        assert_eq!(t.runs(), &[(1, 6)]);
    }

    #[test]
    fn select_and_positions_roundtrip() {
        let s = set(&[2, 3, 4, 10, 11, 20]);
        let pos = set(&[2, 3, 4, 6]);
        let sel = s.select(&pos).unwrap();
        assert_eq!(sel.to_vec(), vec![3, 4, 10, 20]);
        assert_eq!(s.positions_of(&sel).unwrap(), pos);
        assert!(s.select(&set(&[7])).is_none());
        assert!(s.positions_of(&set(&[5])).is_none());
    }

    #[test]
    fn greedy_cover_of_big_interval() {
        // [3, 3 * 2^5 - 1] is five successive maximal Schreier sets.
        let s = IntervalSet::interval(BigUint::from(3u32), BigUint::from(3u32 * 32 - 1));
        let blocks = s.greedy_schreier_cover();
        assert_eq!(blocks.len(), 5);
        assert!(blocks.iter().all(|b| b.is_maximal_schreier()));
    }
}
