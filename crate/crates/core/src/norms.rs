//! Schreier and Baernstein norms with optimal witnesses.
//!
//! For `F` a Schreier set and `C` a Schreier chain,
//!
//! * `mu_p(x, F) = (sum_{n in F} |x(n)|^p)^(1/p)`, and `||x||_{S_p}` is its
//!   supremum over Schreier sets;
//! * `beta_p(x, C) = (sum_{F in C} (sum_{n in F} |x(n)|)^p)^(1/p)`, and
//!   `||x||_{B_p}` is its supremum over chains.
//!
//! All engines work with p-th powers so that exact mode stays rational.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::scalar::{close_rel, Exponent, Mode, Scalar, FLOAT_TOLERANCE};
use crate::schreier::{
    check_oracle_bound, check_successive, enumerate_schreier_subsets, fold_chains, SchreierChain,
    SchreierSet,
};
use crate::vector::{CoeffVector, Run};

/// Largest support handled by the general Schreier-norm scan.
pub const GENERAL_SP_LIMIT: u64 = 1 << 16;
/// Non-increasing vectors with more support entries than this use the
/// window scan for `S_p`.
pub const STRUCTURED_SP_THRESHOLD: u64 = 4096;
/// Largest support handled by the chain dynamic program.
pub const GENERAL_BP_LIMIT: u64 = 256;
/// Largest number of runs accepted by the structured large-vector paths.
pub const STRUCTURED_RUN_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Sp,
    Bp,
}

impl Space {
    pub fn as_str(self) -> &'static str {
        match self {
            Space::Sp => "sp",
            Space::Bp => "bp",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sp" | "s" | "schreier" => Ok(Space::Sp),
            "bp" | "b" | "baernstein" => Ok(Space::Bp),
            other => Err(Error::Parse(format!("unknown space {other:?}"))),
        }
    }
}

/// Maximizer of a norm: a set for `S_p`, a chain for `B_p` (absent for the
/// zero vector).
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Set(SchreierSet),
    Chain(Option<SchreierChain>),
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Set(s) => serde_json::to_value(s).expect("sets serialize"),
            Witness::Chain(Some(c)) => serde_json::to_value(c).expect("chains serialize"),
            Witness::Chain(None) => Value::Null,
        }
    }

    pub fn as_set(&self) -> Option<&SchreierSet> {
        match self {
            Witness::Set(s) => Some(s),
            Witness::Chain(_) => None,
        }
    }

    pub fn as_chain(&self) -> Option<&SchreierChain> {
        match self {
            Witness::Chain(c) => c.as_ref(),
            Witness::Set(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormResult<S> {
    pub space: Space,
    pub p: Exponent,
    pub mode: Mode,
    /// `value^p`, exact in exact mode.
    pub power: S,
    /// `power^(1/p)` as a float.
    pub value: f64,
    pub witness: Witness,
}

impl<S: Scalar> NormResult<S> {
    fn new(space: Space, p: Exponent, power: S, witness: Witness) -> Self {
        let value = root(&power, p);
        NormResult {
            space,
            p,
            mode: S::MODE,
            power,
            value,
            witness,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.power.is_zero()
    }

    /// The norm itself as a scalar, when it is one (always for `p = 1`).
    pub fn exact_value(&self) -> Option<S> {
        if self.p.is_one() || S::MODE == Mode::Float {
            Some(self.power.clone())
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        let value = match (S::MODE, self.p.is_one()) {
            (Mode::Exact, true) => self.power.to_json(),
            _ => json!(self.value),
        };
        json!({
            "space": self.space.as_str(),
            "p": self.p.to_json(),
            "mode": self.mode.as_str(),
            "value": value,
            "power": self.power.to_json(),
            "witness": self.witness.to_json(),
            "is_zero": self.is_zero(),
        })
    }
}

/// `power^(1/p)` as a float.
pub fn root<S: Scalar>(power: &S, p: Exponent) -> f64 {
    match p {
        Exponent::Integer(1) => power.to_float(),
        Exponent::Integer(2) => power.to_float().sqrt(),
        _ => power.to_float().powf(1.0 / p.as_f64()),
    }
}

fn check_exponent<S: Scalar>(p: Exponent) -> Result<()> {
    if S::MODE == Mode::Exact && p.as_integer().is_none() {
        return Err(Error::UnsupportedExponent(format!(
            "exact mode needs an integer exponent, got {p}"
        )));
    }
    Ok(())
}

fn check_baernstein_exponent(p: Exponent) -> Result<()> {
    if p.as_f64() <= 1.0 {
        return Err(Error::UnsupportedExponent(format!(
            "Baernstein norms need p > 1, got {p}"
        )));
    }
    Ok(())
}

fn pow<S: Scalar>(v: &S, p: Exponent) -> S {
    v.pow_p(p).expect("exponent checked against the mode")
}

/// `v^(p-1)` for `p >= 1`.
fn pow_minus_one<S: Scalar>(v: &S, p: Exponent) -> Result<S> {
    match p {
        Exponent::Integer(k) => Ok(num_traits::pow(v.clone(), (k - 1) as usize)),
        Exponent::Real(r) => S::from_float(v.to_float().powf(r - 1.0)),
    }
}

/// `mu_p(x, F)^p`.
pub fn mu_p_power<S: Scalar>(x: &CoeffVector<S>, f: &SchreierSet, p: Exponent) -> Result<S> {
    check_exponent::<S>(p)?;
    Ok(x.sum_over(f.as_set(), |v| pow(&v.abs(), p)))
}

pub fn mu_p<S: Scalar>(x: &CoeffVector<S>, f: &SchreierSet, p: Exponent) -> Result<f64> {
    Ok(root(&mu_p_power(x, f, p)?, p))
}

/// `beta_p(x, C)^p`.
pub fn beta_p_power<S: Scalar>(x: &CoeffVector<S>, c: &SchreierChain, p: Exponent) -> Result<S> {
    check_exponent::<S>(p)?;
    Ok(c.sets().iter().fold(S::zero(), |acc, f| {
        acc + pow(&x.sum_over(f.as_set(), |v| v.abs()), p)
    }))
}

pub fn beta_p<S: Scalar>(x: &CoeffVector<S>, c: &SchreierChain, p: Exponent) -> Result<f64> {
    Ok(root(&beta_p_power(x, c, p)?, p))
}

/// `||x||_p^p`.
pub fn lp_norm_power<S: Scalar>(x: &CoeffVector<S>, p: Exponent) -> Result<S> {
    check_exponent::<S>(p)?;
    Ok(x.runs().iter().fold(S::zero(), |acc, r| {
        acc + S::from_count(r.len) * pow(&r.value.abs(), p)
    }))
}

pub fn lp_norm<S: Scalar>(x: &CoeffVector<S>, p: Exponent) -> Result<f64> {
    Ok(root(&lp_norm_power(x, p)?, p))
}

pub fn sup_norm<S: Scalar>(x: &CoeffVector<S>) -> S {
    x.runs()
        .iter()
        .fold(S::zero(), |acc, r| acc.max_of(r.value.abs()))
}

/// Fenwick tree over value ranks holding counts and sums.
struct Fenwick<S> {
    cnt: Vec<usize>,
    sum: Vec<S>,
}

impl<S: Scalar> Fenwick<S> {
    fn new(n: usize) -> Self {
        Fenwick {
            cnt: vec![0; n + 1],
            sum: vec![S::zero(); n + 1],
        }
    }

    fn insert(&mut self, pos: usize, v: &S) {
        let mut i = pos;
        while i < self.cnt.len() {
            self.cnt[i] += 1;
            self.sum[i] = self.sum[i].clone() + v.clone();
            i += i & i.wrapping_neg();
        }
    }

    fn prefix_sum(&self, pos: usize) -> S {
        let mut i = pos;
        let mut s = S::zero();
        while i > 0 {
            s = s + self.sum[i].clone();
            i &= i - 1;
        }
        s
    }

    /// Smallest rank prefix holding `k` inserted elements.
    fn kth(&self, k: usize) -> usize {
        let n = self.cnt.len() - 1;
        let mut pos = 0;
        let mut rem = k;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.cnt[next] < rem {
                pos = next;
                rem -= self.cnt[next];
            }
            step >>= 1;
        }
        pos + 1
    }

    fn top_sum(&self, k: usize) -> S {
        if k == 0 {
            S::zero()
        } else {
            self.prefix_sum(self.kth(k))
        }
    }
}

/// Support positions and `|x|` values of a vector, expanded.
fn expanded<S: Scalar>(x: &CoeffVector<S>, limit: u64) -> Result<(Vec<u64>, Vec<S>)> {
    let entries = x.entries(limit)?;
    Ok(entries.into_iter().map(|(i, v)| (i, v.abs())).unzip())
}

/// Exact `||x||_{S_p}` with the lexicographically smallest optimal witness
/// inside the support (large non-increasing vectors use a window scan).
pub fn schreier_norm<S: Scalar>(x: &CoeffVector<S>, p: Exponent) -> Result<NormResult<S>> {
    check_exponent::<S>(p)?;
    if x.is_zero() {
        return Ok(NormResult::new(Space::Sp, p, S::zero(), Witness::Set(SchreierSet::empty())));
    }
    let structured = x.is_nonincreasing_abs() && x.runs().len() <= STRUCTURED_RUN_LIMIT;
    let (power, set) = if structured && x.support_len() > STRUCTURED_SP_THRESHOLD {
        schreier_window_scan(x, p)?
    } else if x.support_len() <= GENERAL_SP_LIMIT {
        schreier_scan(x, p)?
    } else {
        return Err(Error::TooLarge(format!(
            "support of {} entries without non-increasing structure",
            x.support_len()
        )));
    };
    Ok(NormResult::new(Space::Sp, p, power, Witness::Set(set)))
}

/// For every candidate minimum `s_i`, the best set adds the `s_i - 1` largest
/// values to its right; ties go to smaller positions.
fn schreier_scan<S: Scalar>(x: &CoeffVector<S>, p: Exponent) -> Result<(S, SchreierSet)> {
    let (pos, abs) = expanded(x, GENERAL_SP_LIMIT)?;
    let a: Vec<S> = abs.iter().map(|v| pow(v, p)).collect();
    let n = a.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[j].partial_cmp(&a[i])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let mut rank = vec![0usize; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r + 1;
    }
    let mut fen = Fenwick::new(n);
    let mut values: Vec<S> = vec![S::zero(); n];
    for i in (0..n).rev() {
        let k = take_count(pos[i], n - 1 - i);
        values[i] = a[i].clone() + fen.top_sum(k);
        fen.insert(rank[i], &a[i]);
    }
    let mut best = 0;
    for i in 1..n {
        if values[i] > values[best] {
            best = i;
        }
    }
    let k = take_count(pos[best], n - 1 - best);
    let mut chosen = vec![pos[best]];
    chosen.extend(order.iter().filter(|&&j| j > best).take(k).map(|&j| pos[j]));
    let set = SchreierSet::from_set(IntervalSet::from_elements(chosen))?;
    Ok((values[best].clone(), set))
}

fn take_count(min: u64, available: usize) -> usize {
    (min - 1).min(available as u64) as usize
}

/// Prefix sums of `|x|^p` over support ranks.
struct RankPrefix<S> {
    /// Number of support entries before each run.
    before: Vec<u64>,
    /// Sum of `|x|^p` before each run.
    acc: Vec<S>,
    a: Vec<S>,
    total: u64,
}

impl<S: Scalar> RankPrefix<S> {
    fn new(runs: &[Run<S>], p: Exponent) -> Self {
        let mut before = Vec::with_capacity(runs.len());
        let mut acc = Vec::with_capacity(runs.len());
        let mut a = Vec::with_capacity(runs.len());
        let mut c = 0u64;
        let mut s = S::zero();
        for r in runs {
            before.push(c);
            acc.push(s.clone());
            let v = pow(&r.value.abs(), p);
            c += r.len;
            s = s + S::from_count(r.len) * v.clone();
            a.push(v);
        }
        RankPrefix {
            before,
            acc,
            a,
            total: c,
        }
    }

    /// Sum over the first `q` ranks.
    fn at(&self, q: u64) -> S {
        if q == 0 {
            return S::zero();
        }
        let j = self.before.partition_point(|&b| b < q) - 1;
        self.acc[j].clone() + S::from_count(q - self.before[j]) * self.a[j].clone()
    }
}

/// Large non-increasing vectors: the best set with minimum at rank `q` is
/// the window of ranks `[q, q + m - 1]`, and its value is piecewise linear in
/// `q` inside a run, so only the ends of the linear pieces need checking.
fn schreier_window_scan<S: Scalar>(x: &CoeffVector<S>, p: Exponent) -> Result<(S, SchreierSet)> {
    let runs = x.runs();
    let pre = RankPrefix::new(runs, p);
    let n = pre.total;
    let mut bounds: Vec<u64> = pre.before.clone();
    bounds.push(n);
    let mut best: Option<(S, u64, u64)> = None;
    for (ri, r) in runs.iter().enumerate() {
        let r0 = pre.before[ri];
        let c = r0 + r.start;
        let mut cands = vec![0, r.len - 1];
        for &b in &bounds {
            if b >= c {
                let h = (b - c) / 2;
                cands.extend([h, h + 1]);
            }
        }
        cands.retain(|&j| j < r.len);
        cands.sort_unstable();
        cands.dedup();
        for j in cands {
            let q = r0 + j + 1;
            let m = r.start + j;
            let e = (q + m - 1).min(n);
            let v = pre.at(e) - pre.at(q - 1);
            if best.as_ref().is_none_or(|(bv, _, _)| v > *bv) {
                best = Some((v, q, e));
            }
        }
    }
    let (v, q, e) = best.expect("non-zero vector has a run");
    let set = x
        .support()
        .select(&IntervalSet::interval(q, e))
        .expect("window ranks lie in the support");
    Ok((v, SchreierSet::from_set(set)?))
}

/// Exact `||x||_{B_p}` (`p > 1`) with the lexicographically smallest optimal
/// chain. Large non-increasing vectors are handled by a certificate: the
/// greedy covering chain of the support is returned when its value meets the
/// upper bound `||x||_{S_1}^(p-1) ||x||_1`.
pub fn baernstein_norm<S: Scalar>(x: &CoeffVector<S>, p: Exponent) -> Result<NormResult<S>> {
    check_baernstein_exponent(p)?;
    check_exponent::<S>(p)?;
    if x.is_zero() {
        return Ok(NormResult::new(Space::Bp, p, S::zero(), Witness::Chain(None)));
    }
    let (power, chain) = if x.support_len() <= GENERAL_BP_LIMIT {
        chain_program(x, p)?
    } else if x.is_nonincreasing_abs() && x.runs().len() <= STRUCTURED_RUN_LIMIT {
        certified_greedy_chain(x, p)?
    } else {
        return Err(Error::TooLarge(format!(
            "support of {} entries without non-increasing structure",
            x.support_len()
        )));
    };
    Ok(NormResult::new(Space::Bp, p, power, Witness::Chain(Some(chain))))
}

/// Block sums for blocks starting at `i`: for each last element `t > i` the
/// block takes the `s_i - 2` largest values strictly between `i` and `t`.
/// Calls `visit(t, block_sum)` for `t = i, i + 1, ...`.
fn for_each_block<S: Scalar>(pos: &[u64], a: &[S], i: usize, mut visit: impl FnMut(usize, S)) {
    visit(i, a[i].clone());
    if pos[i] < 2 {
        return;
    }
    let cap = (pos[i] - 2) as usize;
    // Selected intermediate values, sorted descending.
    let mut sel: Vec<S> = Vec::new();
    let mut sel_sum = S::zero();
    for t in i + 1..a.len() {
        if t - 1 > i && cap > 0 {
            let v = a[t - 1].clone();
            if sel.len() < cap {
                let at = sel.partition_point(|s| *s >= v);
                sel_sum = sel_sum + v.clone();
                sel.insert(at, v);
            } else if v > *sel.last().expect("cap > 0") {
                let old = sel.pop().expect("cap > 0");
                sel_sum = sel_sum - old + v.clone();
                let at = sel.partition_point(|s| *s >= v);
                sel.insert(at, v);
            }
        }
        visit(t, a[i].clone() + sel_sum.clone() + a[t].clone());
    }
}

/// Positions of the block from `i` to `t` with the greedy fill, ties broken
/// toward smaller positions.
fn block_elements<S: Scalar>(pos: &[u64], a: &[S], i: usize, t: usize) -> Vec<u64> {
    if t == i {
        return vec![pos[i]];
    }
    let cap = (pos[i] - 2) as usize;
    let mut mid: Vec<usize> = (i + 1..t).collect();
    mid.sort_by(|&u, &v| {
        a[v].partial_cmp(&a[u])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(u.cmp(&v))
    });
    mid.truncate(cap);
    let mut out: Vec<u64> = mid.into_iter().map(|j| pos[j]).collect();
    out.push(pos[i]);
    out.push(pos[t]);
    out.sort_unstable();
    out
}

fn chain_program<S: Scalar>(x: &CoeffVector<S>, p: Exponent) -> Result<(S, SchreierChain)> {
    let (pos, a) = expanded(x, GENERAL_BP_LIMIT)?;
    let n = a.len();
    // w[i] = best value of chains inside positions i.. .
    let mut w: Vec<S> = vec![S::zero(); n + 1];
    for i in (0..n).rev() {
        let mut best = w[i + 1].clone();
        for_each_block(&pos, &a, i, |t, sum| {
            let v = pow(&sum, p) + w[t + 1].clone();
            if v > best {
                best = v;
            }
        });
        w[i] = best;
    }
    // Forward reconstruction: a block at `i` beats skipping `i` in
    // lexicographic order, and among optimal blocks the smallest wins.
    let mut sets = Vec::new();
    let mut i = 0;
    while i < n {
        let mut choice: Option<(Vec<u64>, usize)> = None;
        for_each_block(&pos, &a, i, |t, sum| {
            let v = pow(&sum, p) + w[t + 1].clone();
            if v.eq_tol(&w[i]) {
                let block = block_elements(&pos, &a, i, t);
                if choice.as_ref().is_none_or(|(b, _)| block < *b) {
                    choice = Some((block, t));
                }
            }
        });
        match choice {
            Some((block, t)) => {
                sets.push(SchreierSet::new(&block)?);
                i = t + 1;
            }
            None => i += 1,
        }
    }
    Ok((w[0].clone(), SchreierChain::new(sets)?))
}

fn certified_greedy_chain<S: Scalar>(
    x: &CoeffVector<S>,
    p: Exponent,
) -> Result<(S, SchreierChain)> {
    let blocks = x.support().greedy_schreier_cover();
    let lower = blocks.iter().fold(S::zero(), |acc, b| {
        acc + pow(&x.sum_over(b, |v| v.abs()), p)
    });
    let s1 = schreier_norm(&x.abs(), Exponent::Integer(1))?.power;
    let l1 = lp_norm_power(x, Exponent::Integer(1))?;
    let upper = pow_minus_one(&s1, p)? * l1;
    let certified = match S::MODE {
        Mode::Exact => lower == upper,
        Mode::Float => close_rel(root(&lower, p), root(&upper, p), FLOAT_TOLERANCE),
    };
    if !certified {
        return Err(Error::TooLarge(format!(
            "support of {} entries: greedy chain does not meet the upper bound",
            x.support_len()
        )));
    }
    let chain = SchreierChain::new(
        blocks
            .into_iter()
            .map(SchreierSet::from_set)
            .collect::<Result<_>>()?,
    )?;
    Ok((lower, chain))
}

/// Exhaustive `||x||^p`: all Schreier subsets (`S_p`) or all chains (`B_p`)
/// inside the support.
pub fn oracle_norm<S: Scalar>(
    x: &CoeffVector<S>,
    p: Exponent,
    space: Space,
    bound: usize,
) -> Result<S> {
    check_exponent::<S>(p)?;
    if space == Space::Bp {
        check_baernstein_exponent(p)?;
    }
    let n = x.support_len();
    check_oracle_bound(usize::try_from(n).unwrap_or(usize::MAX), bound)?;
    let (pos, abs) = expanded(x, bound as u64)?;
    let lookup: BTreeMap<u64, S> = pos.iter().copied().zip(abs).collect();
    let mut best = S::zero();
    match space {
        Space::Sp => {
            for f in enumerate_schreier_subsets(&pos, bound)? {
                let v = f
                    .iter()
                    .fold(S::zero(), |acc, i| acc + pow(&lookup[&i], p));
                if v > best {
                    best = v;
                }
            }
        }
        Space::Bp => {
            let extend = |acc: &S, block: &[u64]| {
                let s = block
                    .iter()
                    .fold(S::zero(), |t, i| t + lookup[i].clone());
                acc.clone() + pow(&s, p)
            };
            fold_chains(&pos, &S::zero(), &extend, &mut |v: &S| {
                if *v > best {
                    best = v.clone();
                }
            });
        }
    }
    Ok(best)
}

/// `(Sigma_C x)(n) = sum_{j in F_n} x(j)`, signed.
pub fn sigma_operator<S: Scalar>(x: &CoeffVector<S>, sets: &[SchreierSet]) -> Result<CoeffVector<S>> {
    check_successive(sets.iter().map(SchreierSet::as_set))?;
    let values = sets
        .iter()
        .map(|f| x.sum_over(f.as_set(), |v| v.clone()))
        .collect();
    Ok(CoeffVector::from_dense(values))
}

/// `|x|` sorted in decreasing order and placed at indices `1, 2, ...`.
pub fn decreasing_rearrangement<S: Scalar>(x: &CoeffVector<S>) -> CoeffVector<S> {
    let mut runs: Vec<Run<S>> = x
        .runs()
        .iter()
        .map(|r| Run {
            start: 0,
            len: r.len,
            value: r.value.abs(),
        })
        .collect();
    runs.sort_by(|a, b| b.value.partial_cmp(&a.value).unwrap_or(std::cmp::Ordering::Equal));
    let mut next = 1;
    for r in &mut runs {
        r.start = next;
        next += r.len;
    }
    CoeffVector::from_runs(runs).expect("laid out consecutively")
}

/// Turns a chain into one whose union is the support of `x`: each set is
/// replaced by the first `|F|` support points of `[min F, max F]`, and every
/// support point left over becomes a singleton. For non-increasing `|x|` the
/// value of `beta_p` does not decrease.
pub fn support_covering_chain<S: Scalar>(
    x: &CoeffVector<S>,
    chain: &SchreierChain,
    limit: u64,
) -> Result<SchreierChain> {
    let support = x.support();
    let mut sets: Vec<IntervalSet> = Vec::new();
    for f in chain.sets() {
        let (lo, hi) = (f.min().expect("non-empty"), f.max().expect("non-empty"));
        let window = IntervalSet::from_intervals(
            support
                .runs()
                .iter()
                .map(|&(a, b)| (a.max(lo), b.min(hi))),
        );
        let (head, _) = window.split_first(&f.len());
        if !head.is_empty() {
            sets.push(head);
        }
    }
    let covered = sets
        .iter()
        .fold(IntervalSet::empty(), |acc, s| acc.union(s));
    let leftover = support.count() - covered.count();
    if leftover > limit {
        return Err(Error::TooLarge(format!(
            "{leftover} uncovered support points exceed the limit {limit}"
        )));
    }
    for v in support.iter().filter(|v| !covered.contains(v)) {
        sets.push(IntervalSet::interval(v, v));
    }
    sets.sort_by_key(|s| *s.min().expect("non-empty"));
    SchreierChain::new(
        sets.into_iter()
            .map(SchreierSet::from_set)
            .collect::<Result<_>>()?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_ratio(n, 1)
    }

    fn ones(n: u64) -> CoeffVector<Rational> {
        CoeffVector::from_dense(vec![q(1); n as usize])
    }

    fn unit(n: u64) -> CoeffVector<Rational> {
        CoeffVector::unit(n).unwrap()
    }

    const P1: Exponent = Exponent::Integer(1);
    const P2: Exponent = Exponent::Integer(2);

    #[test]
    fn seminorm_examples() {
        let x = ones(3);
        assert_eq!(mu_p_power(&x, &SchreierSet::empty(), P2).unwrap(), q(0));
        assert_eq!(mu_p_power(&x, &SchreierSet::new(&[2, 3]).unwrap(), P1).unwrap(), q(2));
        let c = SchreierChain::from_lists(&[vec![1], vec![2, 3]]).unwrap();
        assert_eq!(beta_p_power(&x, &c, P2).unwrap(), q(5));
        assert!((beta_p(&x, &c, P2).unwrap() - 5f64.sqrt()).abs() < 1e-12);
        let e1 = unit(1);
        let single = SchreierChain::from_lists(&[vec![1]]).unwrap();
        assert_eq!(beta_p_power(&e1, &single, P2).unwrap(), q(1));
    }

    #[test]
    fn schreier_norm_examples() {
        let r = schreier_norm(&unit(4), P2).unwrap();
        assert_eq!(r.power, q(1));
        assert_eq!(r.witness.as_set().unwrap().to_vec(), vec![4]);
        let r = schreier_norm(&ones(3), P1).unwrap();
        assert_eq!(r.power, q(2));
        assert_eq!(r.witness.as_set().unwrap().to_vec(), vec![2, 3]);
        let z = schreier_norm(&CoeffVector::<Rational>::zero(), P1).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.witness, Witness::Set(SchreierSet::empty()));
    }

    #[test]
    fn baernstein_norm_examples() {
        let r = baernstein_norm(&unit(6), P2).unwrap();
        assert_eq!(r.power, q(1));
        assert_eq!(r.witness.as_chain().unwrap().to_lists(), vec![vec![6]]);
        let r = baernstein_norm(&ones(3), P2).unwrap();
        assert_eq!(r.power, q(5));
        assert!((r.value - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(
            r.witness.as_chain().unwrap().to_lists(),
            vec![vec![1], vec![2, 3]]
        );
        assert!(matches!(
            baernstein_norm(&ones(3), P1),
            Err(Error::UnsupportedExponent(_))
        ));
        let z = baernstein_norm(&CoeffVector::<Rational>::zero(), P2).unwrap();
        assert_eq!(z.witness, Witness::Chain(None));
    }

    #[test]
    fn exact_mode_rejects_real_exponent() {
        assert!(matches!(
            schreier_norm(&ones(2), Exponent::Real(1.5)),
            Err(Error::UnsupportedExponent(_))
        ));
        let xf = CoeffVector::from_dense(vec![1.0f64; 3]);
        let r = baernstein_norm(&xf, Exponent::Real(1.5)).unwrap();
        let expect = (1.0f64 + 2f64.powf(1.5)).powf(1.0 / 1.5);
        assert!((r.value - expect).abs() < 1e-12);
    }

    #[test]
    fn lp_and_sup_examples() {
        assert_eq!(lp_norm_power(&unit(1), P1).unwrap(), q(1));
        assert!((lp_norm(&ones(3), P2).unwrap() - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(lp_norm_power(&CoeffVector::<Rational>::zero(), P2).unwrap(), q(0));
        assert_eq!(sup_norm(&unit(5)), q(1));
        let x = CoeffVector::from_entries([(2, q(3)), (7, q(-4))]).unwrap();
        assert_eq!(sup_norm(&x), q(4));
        assert_eq!(sup_norm(&CoeffVector::<Rational>::zero()), q(0));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_norm(&ones(3), P1, Space::Sp, 14).unwrap(), q(2));
        assert_eq!(oracle_norm(&ones(3), P2, Space::Bp, 14).unwrap(), q(5));
        assert_eq!(oracle_norm(&unit(9), P2, Space::Bp, 14).unwrap(), q(1));
        assert_eq!(oracle_norm(&unit(9), P1, Space::Sp, 14).unwrap(), q(1));
        assert!(matches!(
            oracle_norm(&ones(15), P1, Space::Sp, 14),
            Err(Error::OracleLimit { .. })
        ));
    }

    #[test]
    fn sigma_examples() {
        let s = |l: &[&[u64]]| -> Vec<SchreierSet> {
            l.iter().map(|v| SchreierSet::new(v).unwrap()).collect()
        };
        let x = ones(2);
        assert_eq!(sigma_operator(&x, &s(&[&[1], &[2]])).unwrap(), ones(2));
        let y = CoeffVector::from_entries([(2, q(1)), (3, q(-1))]).unwrap();
        assert!(sigma_operator(&y, &s(&[&[2, 3]])).unwrap().is_zero());
        let z = sigma_operator(&ones(3), &s(&[&[1], &[2, 3]])).unwrap();
        assert_eq!(z, CoeffVector::from_dense(vec![q(1), q(2)]));
        assert!(sigma_operator(&ones(3), &s(&[&[2, 3], &[3]])).is_err());
    }

    #[test]
    fn rearrangement_examples() {
        let x = CoeffVector::from_entries([(5, q(3)), (2, q(1))]).unwrap();
        assert_eq!(
            decreasing_rearrangement(&x),
            CoeffVector::from_dense(vec![q(3), q(1)])
        );
        assert_eq!(decreasing_rearrangement(&unit(1)), unit(1));
        let flat = CoeffVector::constant_on(&IntervalSet::interval(4, 7), Rational::from_ratio(1, 4));
        assert_eq!(
            decreasing_rearrangement(&flat),
            CoeffVector::constant_on(&IntervalSet::interval(1, 4), Rational::from_ratio(1, 4))
        );
    }

    #[test]
    fn window_scan_matches_general_scan() {
        // Non-increasing vector with several plateaus.
        let runs = vec![
            Run { start: 2, len: 5, value: q(9) },
            Run { start: 7, len: 30, value: q(4) },
            Run { start: 40, len: 100, value: q(3) },
            Run { start: 140, len: 7, value: q(1) },
        ];
        let x = CoeffVector::from_runs(runs).unwrap();
        for p in [P1, P2, Exponent::Integer(3)] {
            let (a, _) = schreier_scan(&x, p).unwrap();
            let (b, set) = schreier_window_scan(&x, p).unwrap();
            assert_eq!(a, b);
            assert_eq!(mu_p_power(&x, &set, p).unwrap(), b);
        }
    }

    #[test]
    fn certificate_path_on_flat_vector() {
        // Flat vector on five maximal blocks starting at 3: value 5^(1/p).
        let mut runs = Vec::new();
        let mut lo = 3u64;
        for _ in 0..5 {
            runs.push(Run { start: lo, len: lo, value: Rational::from_ratio(1, lo) });
            lo *= 2;
        }
        let x = CoeffVector::from_runs(runs).unwrap();
        let (power, chain) = certified_greedy_chain(&x, P2).unwrap();
        assert_eq!(power, q(5));
        assert_eq!(chain.len(), 5);
        assert_eq!(chain_program(&x, P2).unwrap().0, q(5));
    }

    #[test]
    fn covering_chain_keeps_value() {
        let x = CoeffVector::from_dense(vec![q(5), q(4), q(4), q(2), q(1), q(1)]);
        let c = SchreierChain::from_lists(&[vec![2, 6]]).unwrap();
        let d = support_covering_chain(&x, &c, 100).unwrap();
        assert_eq!(d.union(), x.support());
        assert!(beta_p_power(&x, &d, P2).unwrap() > beta_p_power(&x, &c, P2).unwrap());
    }
}
