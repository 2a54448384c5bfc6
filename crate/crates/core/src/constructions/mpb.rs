//! The interval partition `G_1 < F_2 < G_2 < F_3 < ...` and the sets
//! `L_N = union of J_n = F_n + G_n over n in N`.
//!
//! `G_n` packs `n` successive maximal Schreier intervals starting right after
//! `F_n`, so with `t` the number of integers used before `F_n`:
//! `F_n = [t + 1, 2t]` and `G_n = [2t + 1, (2t + 1) 2^n - 1]`. The endpoints
//! outgrow `u64` quickly and are kept as big integers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gl_index::IndexSet;
use crate::interval::IntervalSet;

pub type BigSet = IntervalSet<BigUint>;

/// Materialized partition through `n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct MpbPartition {
    f: Vec<BigSet>,
    g: Vec<BigSet>,
}

/// `J_n` as a `u64` interval, or `None` once it no longer fits.
pub fn j_interval_u64(n: u64) -> Option<(u64, u64)> {
    let mut t: u64 = 0;
    for k in 1..=n {
        let s = t.checked_mul(2)?.checked_add(1)?;
        let end = s.checked_mul(1u64.checked_shl(k as u32)?)?.checked_sub(1)?;
        if k == n {
            return Some((t + 1, end));
        }
        t = end;
    }
    None
}

pub fn mpb_partition(n_max: usize) -> Result<MpbPartition> {
    if n_max == 0 {
        return Err(Error::invalid("the partition needs n_max >= 1"));
    }
    let one = BigUint::one();
    let mut t = BigUint::zero();
    let mut f = Vec::with_capacity(n_max);
    let mut g = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let s = &t * 2u32 + &one;
        let end = (&s << n) - &one;
        f.push(IntervalSet::interval(&t + &one, &t * 2u32));
        g.push(IntervalSet::interval(s, end.clone()));
        t = end;
    }
    Ok(MpbPartition { f, g })
}

impl MpbPartition {
    pub fn n_max(&self) -> usize {
        self.g.len()
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::invalid("partition indices start at 1"));
        }
        if n > self.n_max() {
            return Err(Error::truncation(
                "partition",
                n as u64,
                self.n_max() as u64,
            ));
        }
        Ok(())
    }

    pub fn f(&self, n: usize) -> Result<&BigSet> {
        self.check_n(n)?;
        Ok(&self.f[n - 1])
    }

    pub fn g(&self, n: usize) -> Result<&BigSet> {
        self.check_n(n)?;
        Ok(&self.g[n - 1])
    }

    /// `J_n = F_n + G_n`, a single interval.
    pub fn j(&self, n: usize) -> Result<BigSet> {
        Ok(self.f(n)?.union(self.g(n)?))
    }

    /// The `n` maximal Schreier intervals making up `G_n`.
    pub fn g_blocks(&self, n: usize) -> Result<Vec<BigSet>> {
        let g = self.g(n)?;
        let mut lo = g.min().expect("G_n is non-empty").clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let hi = &lo * 2u32 - 1u32;
            out.push(IntervalSet::interval(lo.clone(), hi.clone()));
            lo = hi + 1u32;
        }
        Ok(out)
    }

    /// Re-checks every structural property: the intervals are successive and
    /// start at 1, `|F_n|` equals everything used before it, `G_n` is the
    /// union of its `n` maximal blocks, and the greedy cover of `G_n` has
    /// exactly `n` sets.
    pub fn check(&self) -> Result<()> {
        let mut next = BigUint::one();
        let mut used = BigUint::zero();
        for n in 1..=self.n_max() {
            let (f, g) = (&self.f[n - 1], &self.g[n - 1]);
            if f.len() != used {
                return Err(Error::invalid(format!("|F_{n}| = {} but {used} precede it", f.len())));
            }
            for part in [f, g] {
                if let Some(lo) = part.min() {
                    if *lo != next {
                        return Err(Error::invalid(format!("gap before {lo} at n = {n}")));
                    }
                    next = part.max().expect("non-empty") + 1u32;
                }
            }
            let blocks = self.g_blocks(n)?;
            if !blocks.iter().all(IntervalSet::is_maximal_schreier) {
                return Err(Error::invalid(format!("G_{n} has a non-maximal block")));
            }
            let union = blocks
                .iter()
                .fold(IntervalSet::empty(), |acc, b| acc.union(b));
            if &union != g {
                return Err(Error::invalid(format!("G_{n} differs from its blocks")));
            }
            let cover = g.greedy_schreier_cover().len();
            if cover != n {
                return Err(Error::invalid(format!("tau_1(G_{n}) = {cover}")));
            }
            used = &used + f.len() + g.len();
        }
        Ok(())
    }

    /// Greedy covering number of each `G_n`.
    pub fn g_covering_numbers(&self) -> Vec<usize> {
        self.g.iter().map(|g| g.greedy_schreier_cover().len()).collect()
    }

    pub fn to_json(&self) -> Value {
        let pair = |s: &BigSet| match s.runs().first() {
            Some((lo, hi)) => {
                use crate::interval::IndexInt;
                json!([lo.to_json(), hi.to_json()])
            }
            None => Value::Null,
        };
        json!({
            "F": self.f.iter().map(pair).collect::<Vec<_>>(),
            "G": self.g.iter().map(pair).collect::<Vec<_>>(),
            "n_max": self.n_max(),
        })
    }
}

/// `L_N` restricted to `n <= through`.
pub fn l_set(part: &MpbPartition, n_set: &IndexSet, through: usize) -> Result<BigSet> {
    part.check_n(through.max(1))?;
    let mut out = IntervalSet::empty();
    for n in n_set.upto(through as u64)? {
        out = out.union(&part.j(n as usize)?);
    }
    Ok(out)
}

/// A verified divergence witness for one `m` in `M \ N`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceWitness {
    pub m: u64,
    /// Positions of `G_m` inside `L_M`.
    pub positions: BigSet,
    /// Covering number of `L_M(positions)`, re-computed.
    pub tau: usize,
    /// Whether `L_N(positions)` is a Schreier set, re-computed.
    pub l_n_schreier: bool,
}

impl DivergenceWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "positions": self.positions.runs_json(),
            "tau": self.tau,
            "l_n_schreier": self.l_n_schreier,
        })
    }
}

/// For `m in M \ N` with `m >= 2`, the positions `J` of `G_m` inside `L_M`
/// satisfy `tau_1(L_M(J)) = m` and `L_N(J)` Schreier. Both facts are
/// recomputed before returning. `N` must have an element above `m` within
/// the partition so that `L_N` reaches position `max J`.
pub fn lemma63_witness(
    part: &MpbPartition,
    m_set: &IndexSet,
    n_set: &IndexSet,
    m: u64,
) -> Result<DivergenceWitness> {
    if m < 2 {
        return Err(Error::invalid("the witness needs m >= 2"));
    }
    if !m_set.upto(m)?.contains(&m) {
        return Err(Error::invalid(format!("{m} is not in M")));
    }
    let n_max = part.n_max() as u64;
    if n_set.upto(m)?.contains(&m) {
        return Err(Error::invalid(format!("{m} lies in N")));
    }
    let mut next = None;
    for bound in m + 1..=n_max {
        if n_set.upto(bound)?.contains(&bound) {
            next = Some(bound);
            break;
        }
    }
    let next = next.ok_or_else(|| Error::truncation("N above m within the partition", m + 1, n_max))?;
    let l_m = l_set(part, m_set, m as usize)?;
    let l_n = l_set(part, n_set, next as usize)?;
    let g_m = part.g(m as usize)?;
    let positions = l_m
        .positions_of(g_m)
        .expect("G_m lies inside L_M when m is in M");
    let image_m = l_m.select(&positions).expect("positions come from L_M");
    let image_n = l_n.select(&positions).ok_or_else(|| {
        Error::truncation(
            "L_N",
            positions.max().and_then(|v| v.to_u64()).unwrap_or(u64::MAX),
            l_n.len().to_u64().unwrap_or(u64::MAX),
        )
    })?;
    let tau = image_m.greedy_schreier_cover().len();
    let l_n_schreier = image_n.is_schreier();
    if tau != m as usize || !l_n_schreier {
        return Err(Error::invalid(format!(
            "witness for m = {m} failed verification (tau = {tau}, schreier = {l_n_schreier})"
        )));
    }
    Ok(DivergenceWitness {
        m,
        positions,
        tau,
        l_n_schreier,
    })
}

/// Witnesses for every `m in (M \ N)` with `2 <= m <= window`.
pub fn verify_corollary64(
    part: &MpbPartition,
    m_set: &IndexSet,
    n_set: &IndexSet,
    window: u64,
) -> Result<Vec<DivergenceWitness>> {
    let n_elems = n_set.upto(window)?;
    m_set
        .upto(window)?
        .into_iter()
        .filter(|m| *m >= 2 && !n_elems.contains(m))
        .map(|m| lemma63_witness(part, m_set, n_set, m))
        .collect()
}
