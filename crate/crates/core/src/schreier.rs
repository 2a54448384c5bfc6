//! Schreier sets, Schreier chains and the Schreier covering number.
//!
//! A finite set `F` of positive integers is a Schreier set when
//! `|F| <= min F` (the empty set included). A chain is a non-empty list of
//! non-empty Schreier sets with `max F_j < min F_{j+1}`.

use std::env;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;

/// Default size limit for the exhaustive oracles.
pub const DEFAULT_ORACLE_BOUND: usize = 14;

/// Environment variable overriding [`DEFAULT_ORACLE_BOUND`].
pub const ORACLE_BOUND_ENV: &str = "SCHREIER_LAB_ORACLE_BOUND";

/// Oracle bound currently in force.
pub fn oracle_bound() -> usize {
    env::var(ORACLE_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BOUND)
}

pub(crate) fn check_oracle_bound(size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(Error::OracleLimit { size, bound });
    }
    Ok(())
}

/// Validates a finite set given as a list: positive and pairwise distinct.
pub fn finite_set(elements: &[u64]) -> Result<IntervalSet> {
    if elements.contains(&0) {
        return Err(Error::invalid("set elements must be positive integers"));
    }
    let set = IntervalSet::from_elements(elements.iter().copied());
    if set.count() as usize != elements.len() {
        return Err(Error::invalid("set elements must be distinct"));
    }
    Ok(set)
}

/// An admissible finite set: `|F| <= min F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SchreierSet(IntervalSet);

impl SchreierSet {
    pub fn new(elements: &[u64]) -> Result<Self> {
        Self::from_set(finite_set(elements)?)
    }

    pub fn from_set(set: IntervalSet) -> Result<Self> {
        if set.min() == Some(&0) {
            return Err(Error::invalid("set elements must be positive integers"));
        }
        if !set.is_schreier() {
            return Err(Error::invalid(format!(
                "{set:?} is not a Schreier set (|F| > min F)"
            )));
        }
        Ok(SchreierSet(set))
    }

    pub fn empty() -> Self {
        SchreierSet(IntervalSet::empty())
    }

    pub fn as_set(&self) -> &IntervalSet {
        &self.0
    }

    pub fn into_set(self) -> IntervalSet {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> u64 {
        self.0.count()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.min().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.max().copied()
    }

    pub fn is_maximal(&self) -> bool {
        self.0.is_maximal_schreier()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter()
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.0.to_vec()
    }
}

impl Serialize for SchreierSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Non-empty list of non-empty, successive Schreier sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchreierChain(Vec<SchreierSet>);

impl SchreierChain {
    pub fn new(sets: Vec<SchreierSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::invalid("a Schreier chain has at least one set"));
        }
        if sets.iter().any(SchreierSet::is_empty) {
            return Err(Error::invalid("chain sets must be non-empty"));
        }
        check_successive(sets.iter().map(SchreierSet::as_set))?;
        Ok(SchreierChain(sets))
    }

    pub fn from_lists(lists: &[Vec<u64>]) -> Result<Self> {
        Self::new(
            lists
                .iter()
                .map(|l| SchreierSet::new(l))
                .collect::<Result<_>>()?,
        )
    }

    pub fn sets(&self) -> &[SchreierSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn union(&self) -> IntervalSet {
        IntervalSet::from_intervals(
            self.0
                .iter()
                .flat_map(|s| s.as_set().runs().iter().copied()),
        )
    }

    pub fn to_lists(&self) -> Vec<Vec<u64>> {
        self.0.iter().map(SchreierSet::to_vec).collect()
    }

    pub fn into_sets(self) -> Vec<SchreierSet> {
        self.0
    }
}

impl Serialize for SchreierChain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

pub(crate) fn check_successive<'a>(sets: impl Iterator<Item = &'a IntervalSet>) -> Result<()> {
    let mut prev_max: Option<u64> = None;
    for set in sets {
        if let (Some(pm), Some(&mn)) = (prev_max, set.min()) {
            if pm >= mn {
                return Err(Error::invalid(format!(
                    "sets are not successive: {pm} >= {mn}"
                )));
            }
        }
        if let Some(&mx) = set.max() {
            prev_max = Some(mx);
        }
    }
    Ok(())
}

/// Covering chain produced by [`tau1`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringCertificate {
    pub count: usize,
    pub chain: Vec<SchreierSet>,
    #[serde(skip)]
    pub covered: IntervalSet,
}

impl CoveringCertificate {
    /// Re-checks the certificate from scratch: the chain is successive,
    /// admissible, covers `covered`, has `count` sets, and all sets but the
    /// last are maximal.
    pub fn verify(&self) -> bool {
        if self.chain.len() != self.count {
            return false;
        }
        if check_successive(self.chain.iter().map(SchreierSet::as_set)).is_err() {
            return false;
        }
        let union = IntervalSet::from_intervals(
            self.chain
                .iter()
                .flat_map(|s| s.as_set().runs().iter().copied()),
        );
        let covers = self.covered.iter().all(|v| union.contains(&v));
        let admissible = self.chain.iter().all(|s| !s.is_empty() && s.as_set().is_schreier());
        let maximal = self
            .chain
            .iter()
            .rev()
            .skip(1)
            .all(SchreierSet::is_maximal);
        covers && admissible && maximal
    }
}

pub fn is_schreier(elements: &[u64]) -> Result<bool> {
    Ok(finite_set(elements)?.is_schreier())
}

pub fn is_maximal_schreier(elements: &[u64]) -> Result<bool> {
    let set = finite_set(elements)?;
    if !set.is_schreier() {
        return Err(Error::invalid(format!("{set:?} is not a Schreier set")));
    }
    Ok(set.is_maximal_schreier())
}

/// Whether `g` is a spread of `f`: both strictly increasing of equal length
/// with `f_i <= g_i` for every `i`.
pub fn is_spread(f: &[u64], g: &[u64]) -> Result<bool> {
    if f.len() != g.len() {
        return Err(Error::invalid(format!(
            "spread needs equal sizes, got {} and {}",
            f.len(),
            g.len()
        )));
    }
    for seq in [f, g] {
        if seq.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("spread arguments must be strictly increasing"));
        }
    }
    Ok(f.iter().zip(g).all(|(a, b)| a <= b))
}

/// Schreier covering number with a greedy certificate.
///
/// The greedy rule cuts the first `min(min(rest), |rest|)` elements of what
/// is left; [`tau1_oracle`] is the independent reference it is tested against.
pub fn tau1(set: &IntervalSet) -> Result<CoveringCertificate> {
    if set.min() == Some(&0) {
        return Err(Error::invalid("set elements must be positive integers"));
    }
    let chain = set
        .greedy_schreier_cover()
        .into_iter()
        .map(SchreierSet)
        .collect::<Vec<_>>();
    Ok(CoveringCertificate {
        count: chain.len(),
        chain,
        covered: set.clone(),
    })
}

/// Greedy covering count of a sorted list of distinct positive integers,
/// without building the certificate.
pub fn tau1_count(sorted: &[u64]) -> usize {
    let mut i = 0;
    let mut count = 0;
    while i < sorted.len() {
        let take = usize::try_from(sorted[i]).unwrap_or(usize::MAX);
        i += take.min(sorted.len() - i);
        count += 1;
    }
    count
}

/// Convenience wrapper of [`tau1`] for element lists.
pub fn tau1_of(elements: &[u64]) -> Result<CoveringCertificate> {
    tau1(&finite_set(elements)?)
}

/// Exhaustive covering number.
///
/// Chain sets may be taken inside `A` without loss, so a covering chain is a
/// split of the sorted elements of `A` into consecutive runs. All `2^(n-1)`
/// splits are tried.
pub fn tau1_oracle(elements: &[u64], bound: usize) -> Result<usize> {
    let set = finite_set(elements)?;
    let v = set.to_vec();
    check_oracle_bound(v.len(), bound)?;
    if v.is_empty() {
        return Ok(0);
    }
    let n = v.len();
    let mut best = usize::MAX;
    // Bit `i` set means a new block starts at v[i + 1].
    for cuts in 0u32..(1u32 << (n - 1)) {
        let mut blocks = 0;
        let mut start = 0;
        let mut ok = true;
        for i in 0..n {
            let last = i == n - 1 || cuts & (1 << i) != 0;
            if last {
                let size = (i - start + 1) as u64;
                if size > v[start] {
                    ok = false;
                    break;
                }
                blocks += 1;
                start = i + 1;
            }
        }
        if ok {
            best = best.min(blocks);
        }
    }
    Ok(best)
}

/// Every Schreier subset of `s` (the empty set included), in lexicographic
/// order of their sorted elements.
pub fn enumerate_schreier_subsets(s: &[u64], bound: usize) -> Result<Vec<SchreierSet>> {
    let v = finite_set(s)?.to_vec();
    check_oracle_bound(v.len(), bound)?;
    let n = v.len();
    let mut out: Vec<Vec<u64>> = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let sub: Vec<u64> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| v[i]).collect();
        if sub.first().is_none_or(|&m| sub.len() as u64 <= m) {
            out.push(sub);
        }
    }
    out.sort();
    Ok(out
        .into_iter()
        .map(|sub| SchreierSet(IntervalSet::from_elements(sub)))
        .collect())
}

/// Depth-first walk over every Schreier chain whose union lies in `elems`
/// (sorted, distinct). `extend` derives a chain's accumulator from its parent
/// prefix and its last set; `visit` sees every chain once.
pub fn fold_chains<A, E, V>(elems: &[u64], root: &A, extend: &E, visit: &mut V)
where
    E: Fn(&A, &[u64]) -> A,
    V: FnMut(&A),
{
    fn rec<A, E, V>(elems: &[u64], from: usize, acc: &A, extend: &E, visit: &mut V)
    where
        E: Fn(&A, &[u64]) -> A,
        V: FnMut(&A),
    {
        let n = elems.len();
        let mut block = Vec::new();
        for first in from..n {
            let rest = &elems[first + 1..];
            let cap = (elems[first] - 1).min(rest.len() as u64) as usize;
            for mask in 0u64..(1u64 << rest.len()) {
                if mask.count_ones() as usize > cap {
                    continue;
                }
                block.clear();
                block.push(elems[first]);
                let mut last = first;
                for (i, &e) in rest.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        block.push(e);
                        last = first + 1 + i;
                    }
                }
                let next = extend(acc, &block);
                visit(&next);
                rec(elems, last + 1, &next, extend, visit);
            }
        }
    }
    rec(elems, 0, root, extend, visit);
}

/// Every Schreier chain with union inside `s`.
pub fn enumerate_chains(s: &[u64], bound: usize) -> Result<Vec<SchreierChain>> {
    let v = finite_set(s)?.to_vec();
    check_oracle_bound(v.len(), bound)?;
    let mut out = Vec::new();
    fold_chains(
        &v,
        &Vec::<Vec<u64>>::new(),
        &|prefix: &Vec<Vec<u64>>, block: &[u64]| {
            let mut next = prefix.clone();
            next.push(block.to_vec());
            next
        },
        &mut |chain: &Vec<Vec<u64>>| out.push(chain.clone()),
    );
    out.into_iter()
        .map(|lists| SchreierChain::from_lists(&lists))
        .collect()
}

/// `count` successive maximal Schreier intervals, the first being
/// `[start, 2 start)`.
pub fn maximal_chain_from(start: u64, count: usize) -> Result<SchreierChain> {
    if start == 0 || count == 0 {
        return Err(Error::invalid("start and count must be positive"));
    }
    let mut sets = Vec::with_capacity(count);
    let mut lo = start;
    for _ in 0..count {
        let hi = lo
            .checked_mul(2)
            .ok_or_else(|| Error::invalid("maximal chain overflows u64"))?
            - 1;
        sets.push(SchreierSet(IntervalSet::interval(lo, hi)));
        lo = hi + 1;
    }
    Ok(SchreierChain(sets))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_examples() {
        assert!(is_schreier(&[]).unwrap());
        assert!(!is_schreier(&[1, 2]).unwrap());
        assert!(is_schreier(&[3, 5, 9]).unwrap());
        assert!(matches!(is_schreier(&[0, 3]), Err(Error::InvalidInput(_))));
        assert!(matches!(is_schreier(&[3, 3]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn maximality_examples() {
        assert!(is_maximal_schreier(&[1]).unwrap());
        assert!(is_maximal_schreier(&[3, 4, 5]).unwrap());
        assert!(!is_maximal_schreier(&[3, 4]).unwrap());
        assert!(!is_maximal_schreier(&[]).unwrap());
        assert!(is_maximal_schreier(&[1, 2]).is_err());
    }

    #[test]
    fn spread_examples() {
        assert!(is_spread(&[1, 2], &[2, 5]).unwrap());
        assert!(!is_spread(&[2, 5], &[2, 4]).unwrap());
        assert!(is_spread(&[], &[]).unwrap());
        assert!(is_spread(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn tau1_examples() {
        let empty = tau1_of(&[]).unwrap();
        assert_eq!(empty.count, 0);
        assert!(empty.chain.is_empty());

        let c = tau1_of(&[1, 2, 3]).unwrap();
        assert_eq!(c.count, 2);
        assert_eq!(
            c.chain.iter().map(SchreierSet::to_vec).collect::<Vec<_>>(),
            vec![vec![1], vec![2, 3]]
        );
        assert!(c.verify());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(tau1_oracle(&[2, 3], 14).unwrap(), 1);
        assert_eq!(tau1_oracle(&[1, 2, 3], 14).unwrap(), 2);
        let six = [1, 2, 3, 4, 5, 6];
        assert_eq!(tau1_oracle(&six, 14).unwrap(), tau1_of(&six).unwrap().count);
        assert_eq!(tau1_oracle(&[], 14).unwrap(), 0);
        let big: Vec<u64> = (1..=15).collect();
        assert!(matches!(
            tau1_oracle(&big, 14),
            Err(Error::OracleLimit { size: 15, bound: 14 })
        ));
    }

    #[test]
    fn subset_enumeration_examples() {
        let lists = |s: &[u64]| -> Vec<Vec<u64>> {
            enumerate_schreier_subsets(s, 14)
                .unwrap()
                .iter()
                .map(SchreierSet::to_vec)
                .collect()
        };
        assert_eq!(lists(&[1, 2]), vec![vec![], vec![1], vec![2]]);
        assert_eq!(lists(&[]), vec![Vec::<u64>::new()]);
        assert_eq!(
            lists(&[2, 3]),
            vec![vec![], vec![2], vec![2, 3], vec![3]]
        );
    }

    #[test]
    fn chain_enumeration_examples() {
        let mut got: Vec<Vec<Vec<u64>>> = enumerate_chains(&[1, 2, 3], 14)
            .unwrap()
            .iter()
            .map(SchreierChain::to_lists)
            .collect();
        got.sort();
        let mut want = vec![
            vec![vec![1]],
            vec![vec![2]],
            vec![vec![3]],
            vec![vec![2, 3]],
            vec![vec![1], vec![2]],
            vec![vec![1], vec![3]],
            vec![vec![2], vec![3]],
            vec![vec![1], vec![2, 3]],
            vec![vec![1], vec![2], vec![3]],
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(
            enumerate_chains(&[1], 14).unwrap()[0].to_lists(),
            vec![vec![1]]
        );
        assert!(enumerate_chains(&[], 14).unwrap().is_empty());
    }

    #[test]
    fn maximal_chain_examples() {
        assert_eq!(maximal_chain_from(1, 1).unwrap().to_lists(), vec![vec![1]]);
        assert_eq!(
            maximal_chain_from(3, 2).unwrap().to_lists(),
            vec![vec![3, 4, 5], (6..=11).collect::<Vec<_>>()]
        );
        assert_eq!(maximal_chain_from(2, 1).unwrap().to_lists(), vec![vec![2, 3]]);
        assert!(maximal_chain_from(0, 1).is_err());
    }

    #[test]
    fn chain_validation() {
        assert!(SchreierChain::from_lists(&[vec![2, 3], vec![3]]).is_err());
        assert!(SchreierChain::from_lists(&[]).is_err());
        assert!(SchreierChain::from_lists(&[vec![1, 2]]).is_err());
        assert!(SchreierChain::from_lists(&[vec![1], vec![2, 9]]).is_ok());
    }

    #[test]
    fn tau_of_maximal_chain_union() {
        for start in 1..6 {
            for n in 1..6 {
                let chain = maximal_chain_from(start, n).unwrap();
                assert_eq!(tau1(&chain.union()).unwrap().count, n);
            }
        }
    }
}
