//! Finitely supported coefficient vectors and block sequences.
//!
//! Vectors are stored as maximal runs of consecutive indices carrying the
//! same value, so flat vectors on huge maximal Schreier sets stay small.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::scalar::{Exponent, Scalar};

/// Indices `start..start + len` all carrying `value`.
#[derive(Clone, Debug, PartialEq)]
pub struct Run<S> {
    pub start: u64,
    pub len: u64,
    pub value: S,
}

impl<S> Run<S> {
    pub fn end(&self) -> u64 {
        self.start + self.len - 1
    }
}

/// Sparse vector over positive indices. No stored zeros; runs are sorted,
/// disjoint, and adjacent runs with equal values are merged.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector<S> {
    runs: Vec<Run<S>>,
}

impl<S: Scalar> Default for CoeffVector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> CoeffVector<S> {
    pub fn zero() -> Self {
        CoeffVector { runs: Vec::new() }
    }

    /// The unit vector `e_n`.
    pub fn unit(n: u64) -> Result<Self> {
        Self::from_entries([(n, S::one())])
    }

    /// Builds a vector from `(index, value)` pairs; zero values are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (u64, S)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, v) in entries {
            if i == 0 {
                return Err(Error::invalid("vector indices start at 1"));
            }
            if map.insert(i, v).is_some() {
                return Err(Error::invalid(format!("duplicate index {i}")));
            }
        }
        Self::from_runs(
            map.into_iter()
                .map(|(start, value)| Run {
                    start,
                    len: 1,
                    value,
                })
                .collect(),
        )
    }

    /// Dense shorthand: `values[i]` sits at index `i + 1`.
    pub fn from_dense(values: Vec<S>) -> Self {
        Self::from_runs(
            values
                .into_iter()
                .enumerate()
                .map(|(i, value)| Run {
                    start: i as u64 + 1,
                    len: 1,
                    value,
                })
                .collect(),
        )
        .expect("dense indices are positive and distinct")
    }

    /// Validates and normalizes a list of runs (any order, no overlaps).
    pub fn from_runs(mut runs: Vec<Run<S>>) -> Result<Self> {
        runs.retain(|r| r.len > 0 && !r.value.is_zero());
        runs.sort_by_key(|r| r.start);
        let mut out: Vec<Run<S>> = Vec::with_capacity(runs.len());
        for run in runs {
            if run.start == 0 {
                return Err(Error::invalid("vector indices start at 1"));
            }
            if run.start.checked_add(run.len).is_none() {
                return Err(Error::invalid("run overflows u64 indices"));
            }
            if let Some(last) = out.last_mut() {
                if last.end() >= run.start {
                    return Err(Error::invalid(format!("index {} assigned twice", run.start)));
                }
                if last.end() + 1 == run.start && last.value == run.value {
                    last.len += run.len;
                    continue;
                }
            }
            out.push(run);
        }
        Ok(CoeffVector { runs: out })
    }

    /// `value` on every element of `set`.
    pub fn constant_on(set: &IntervalSet, value: S) -> Self {
        Self::from_runs(
            set.runs()
                .iter()
                .map(|&(lo, hi)| Run {
                    start: lo,
                    len: hi - lo + 1,
                    value: value.clone(),
                })
                .collect(),
        )
        .expect("interval runs are disjoint and positive")
    }

    pub fn runs(&self) -> &[Run<S>] {
        &self.runs
    }

    pub fn is_zero(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn support(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.runs.iter().map(|r| (r.start, r.end())))
    }

    pub fn support_len(&self) -> u64 {
        self.runs.iter().map(|r| r.len).sum()
    }

    pub fn min_support(&self) -> Option<u64> {
        self.runs.first().map(|r| r.start)
    }

    pub fn max_support(&self) -> Option<u64> {
        self.runs.last().map(Run::end)
    }

    pub fn get(&self, index: u64) -> S {
        let i = self.runs.partition_point(|r| r.end() < index);
        match self.runs.get(i) {
            Some(r) if r.start <= index => r.value.clone(),
            _ => S::zero(),
        }
    }

    /// Expanded `(index, value)` list; refuses supports above `limit`.
    pub fn entries(&self, limit: u64) -> Result<Vec<(u64, S)>> {
        let n = self.support_len();
        if n > limit {
            return Err(Error::TooLarge(format!(
                "support of {n} entries exceeds the expansion limit {limit}"
            )));
        }
        let mut out = Vec::with_capacity(n as usize);
        for r in &self.runs {
            for i in r.start..=r.end() {
                out.push((i, r.value.clone()));
            }
        }
        Ok(out)
    }

    pub fn map_values(&self, f: impl Fn(&S) -> Result<S>) -> Result<Self> {
        Self::from_runs(
            self.runs
                .iter()
                .map(|r| {
                    Ok(Run {
                        start: r.start,
                        len: r.len,
                        value: f(&r.value)?,
                    })
                })
                .collect::<Result<_>>()?,
        )
    }

    pub fn abs(&self) -> Self {
        self.map_values(|v| Ok(v.abs())).expect("abs keeps runs valid")
    }

    /// The vector `|x|^p`.
    pub fn abs_pow(&self, p: Exponent) -> Result<Self> {
        self.map_values(|v| v.abs().pow_p(p))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_values(|v| Ok(v.clone() * c.clone()))
            .expect("scaling keeps runs valid")
    }

    /// Entrywise sum with another vector.
    pub fn add(&self, other: &Self) -> Self {
        // Cut both run lists at every boundary and add piecewise.
        let mut cuts: Vec<u64> = Vec::new();
        for r in self.runs.iter().chain(other.runs.iter()) {
            cuts.push(r.start);
            cuts.push(r.end() + 1);
        }
        cuts.sort_unstable();
        cuts.dedup();
        let mut runs = Vec::new();
        for w in cuts.windows(2) {
            let v = self.get(w[0]) + other.get(w[0]);
            runs.push(Run {
                start: w[0],
                len: w[1] - w[0],
                value: v,
            });
        }
        Self::from_runs(runs).expect("piecewise runs are disjoint")
    }

    /// Sum of `f(value)` over the indices of `set`.
    pub fn sum_over(&self, set: &IntervalSet, f: impl Fn(&S) -> S) -> S {
        let mut total = S::zero();
        let mut j = 0;
        for &(lo, hi) in set.runs() {
            while j < self.runs.len() && self.runs[j].end() < lo {
                j += 1;
            }
            let mut k = j;
            while k < self.runs.len() && self.runs[k].start <= hi {
                let r = &self.runs[k];
                let a = r.start.max(lo);
                let b = r.end().min(hi);
                if a <= b {
                    total = total + S::from_count(b - a + 1) * f(&r.value);
                }
                k += 1;
            }
        }
        total
    }

    /// Whether `|x|` is non-increasing along the support.
    pub fn is_nonincreasing_abs(&self) -> bool {
        self.runs
            .windows(2)
            .all(|w| w[0].value.abs() >= w[1].value.abs())
    }

    /// Sorted-key JSON object `{"index": value}`.
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for r in &self.runs {
            for i in r.start..=r.end() {
                map.insert(i.to_string(), r.value.to_json());
            }
        }
        Value::Object(map)
    }

    /// Run-length JSON: `[[start, end, value], ...]`.
    pub fn runs_json(&self) -> Value {
        Value::Array(
            self.runs
                .iter()
                .map(|r| {
                    Value::Array(vec![
                        Value::from(r.start),
                        Value::from(r.end()),
                        r.value.to_json(),
                    ])
                })
                .collect(),
        )
    }

    /// Parses `{"index": value}`, a dense array, or `{"runs": [[lo, hi, v], ...]}`.
    /// Values may be numbers or strings holding decimals or `num/den`.
    pub fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Array(items) => Ok(Self::from_dense(
                items.iter().map(scalar_from_json).collect::<Result<_>>()?,
            )),
            Value::Object(map) if map.len() == 1 && map.contains_key("runs") => {
                let runs = map["runs"]
                    .as_array()
                    .ok_or_else(|| Error::Parse("\"runs\" must be an array".into()))?;
                let mut out = Vec::with_capacity(runs.len());
                for r in runs {
                    let triple = r.as_array().filter(|t| t.len() == 3).ok_or_else(|| {
                        Error::Parse("each run must be [start, end, value]".into())
                    })?;
                    let lo = triple[0]
                        .as_u64()
                        .ok_or_else(|| Error::Parse("run start must be an integer".into()))?;
                    let hi = triple[1]
                        .as_u64()
                        .ok_or_else(|| Error::Parse("run end must be an integer".into()))?;
                    if hi < lo {
                        return Err(Error::Parse(format!("empty run [{lo}, {hi}]")));
                    }
                    out.push(Run {
                        start: lo,
                        len: hi - lo + 1,
                        value: scalar_from_json(&triple[2])?,
                    });
                }
                Self::from_runs(out)
            }
            Value::Object(map) => {
                let mut entries = Vec::with_capacity(map.len());
                for (k, v) in map {
                    let idx: u64 = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad index {k:?}")))?;
                    entries.push((idx, scalar_from_json(v)?));
                }
                Self::from_entries(entries)
            }
            _ => Err(Error::Parse(
                "a vector is a JSON array or an object of index/value pairs".into(),
            )),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("vector JSON: {e}")))?;
        Self::from_json(&value)
    }
}

fn scalar_from_json<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::String(s) => S::parse_literal(s),
        Value::Number(n) => S::parse_literal(&n.to_string()),
        other => Err(Error::Parse(format!("bad vector entry {other}"))),
    }
}

/// Non-zero vectors with successive supports.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSequence<S> {
    blocks: Vec<CoeffVector<S>>,
}

impl<S: Scalar> BlockSequence<S> {
    pub fn new(blocks: Vec<CoeffVector<S>>) -> Result<Self> {
        for (i, b) in blocks.iter().enumerate() {
            if b.is_zero() {
                return Err(Error::invalid(format!("block {} is zero", i + 1)));
            }
        }
        for (i, w) in blocks.windows(2).enumerate() {
            if w[0].max_support() >= w[1].min_support() {
                return Err(Error::invalid(format!(
                    "blocks {} and {} are not successive",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(BlockSequence { blocks })
    }

    pub fn blocks(&self) -> &[CoeffVector<S>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `sum_k coeffs[k] * blocks[indices[k]]`.
    pub fn combination(&self, indices: &[usize], coeffs: &[S]) -> Result<CoeffVector<S>> {
        if indices.len() != coeffs.len() {
            return Err(Error::invalid("one coefficient per selected block"));
        }
        let mut runs = Vec::new();
        for (&i, c) in indices.iter().zip(coeffs) {
            let block = self
                .blocks
                .get(i)
                .ok_or_else(|| Error::invalid(format!("block index {i} out of range")))?;
            runs.extend(block.scale(c).runs().iter().cloned());
        }
        CoeffVector::from_runs(runs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::Signed;

    fn q(n: i64) -> Rational {
        Rational::from_ratio(n, 1)
    }

    #[test]
    fn normalizes_runs_and_drops_zeros() {
        let v = CoeffVector::from_entries([(3, q(1)), (1, q(1)), (2, q(1)), (5, q(0))]).unwrap();
        assert_eq!(v.runs().len(), 1);
        assert_eq!(v.support().to_vec(), vec![1, 2, 3]);
        assert_eq!(v.get(2), q(1));
        assert_eq!(v.get(5), q(0));
        assert!(CoeffVector::<Rational>::from_entries([(0, q(1))]).is_err());
        assert!(CoeffVector::<Rational>::from_entries([(1, q(1)), (1, q(2))]).is_err());
    }

    #[test]
    fn json_forms() {
        let a = CoeffVector::<Rational>::parse("[1, \"1/2\", 0, -3]").unwrap();
        assert_eq!(a.support().to_vec(), vec![1, 2, 4]);
        assert_eq!(a.get(2), Rational::from_ratio(1, 2));
        let b = CoeffVector::<Rational>::parse("{\"4\": \"-3\", \"1\": 1, \"2\": 0.5}").unwrap();
        assert_eq!(a, b);
        let c = CoeffVector::<Rational>::parse("{\"runs\": [[1, 1, 1], [2, 2, \"1/2\"], [4, 4, -3]]}")
            .unwrap();
        assert_eq!(a, c);
        assert_eq!(
            a.to_json(),
            serde_json::json!({"1": "1", "2": "1/2", "4": "-3"})
        );
        assert!(CoeffVector::<f64>::parse("[1,").is_err());
        assert!(CoeffVector::<f64>::parse("{\"x\": 1}").is_err());
    }

    #[test]
    fn add_and_sum_over() {
        let x = CoeffVector::constant_on(&IntervalSet::interval(1, 10), q(2));
        let y = CoeffVector::from_entries([(5, q(-2)), (11, q(1))]).unwrap();
        let z = x.add(&y);
        assert_eq!(z.support_len(), 10);
        assert_eq!(z.get(5), q(0));
        let set = IntervalSet::from_elements([4, 5, 6, 11]);
        assert_eq!(z.sum_over(&set, |v| v.abs()), q(5));
    }

    #[test]
    fn block_sequences_must_be_successive() {
        let e = |n| CoeffVector::<Rational>::unit(n).unwrap();
        assert!(BlockSequence::new(vec![e(1), e(2)]).is_ok());
        assert!(BlockSequence::new(vec![e(2), e(1)]).is_err());
        assert!(BlockSequence::new(vec![e(1), CoeffVector::zero()]).is_err());
    }
}
