//! Index sequences, truncated Gasparis-Leung indices and domination checks.
//!
//! For strictly increasing `M = (m_j)` and `N = (n_j)` the index is
//! `sup { tau_1(M(J)) : N(J) Schreier }`; here the supremum runs over
//! `J` inside `{1..K}` and the result is a lower-bound certificate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::constructions::mpb::j_interval_u64;
use crate::error::{Error, Result};
use crate::norms::{baernstein_norm, schreier_norm, NormResult, Space};
use crate::scalar::{Exponent, Scalar};
use crate::schreier::{tau1_count, SchreierSet};
use crate::vector::CoeffVector;

/// A strictly increasing sequence of positive integers given by a rule.
#[derive(Clone, Debug, PartialEq)]
pub enum IndexSet {
    /// Known exactly on `{1..through}`; nothing is claimed beyond.
    Explicit { prefix: Vec<u64>, through: u64 },
    /// `a, a + d, a + 2d, ...`
    Arithmetic { a: u64, d: u64 },
    /// `2m - 1` for `m` in the inner set.
    DoublingOdd(Box<IndexSet>),
    /// `2m` for `m` in the inner set.
    DoublingEven(Box<IndexSet>),
    Union(Box<IndexSet>, Box<IndexSet>),
    /// Union of the partition intervals `J_n` over `n` in the inner set.
    LSet(Box<IndexSet>),
}

impl IndexSet {
    /// Explicit prefix, known through its last element.
    pub fn explicit(prefix: Vec<u64>) -> Result<Self> {
        let through = prefix.last().copied().unwrap_or(0);
        Self::explicit_through(prefix, through)
    }

    /// Explicit prefix, known to be the whole set within `{1..through}`.
    pub fn explicit_through(prefix: Vec<u64>, through: u64) -> Result<Self> {
        if prefix.first() == Some(&0) {
            return Err(Error::invalid("index sets hold positive integers"));
        }
        if prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("index sets must be strictly increasing"));
        }
        if prefix.last().is_some_and(|&l| l > through) {
            return Err(Error::invalid("prefix extends beyond its known range"));
        }
        Ok(IndexSet::Explicit { prefix, through })
    }

    pub fn arithmetic(a: u64, d: u64) -> Result<Self> {
        if a == 0 || d == 0 {
            return Err(Error::invalid("arithmetic index sets need a >= 1 and d >= 1"));
        }
        Ok(IndexSet::Arithmetic { a, d })
    }

    pub fn doubling_odd(inner: IndexSet) -> Self {
        IndexSet::DoublingOdd(Box::new(inner))
    }

    pub fn doubling_even(inner: IndexSet) -> Self {
        IndexSet::DoublingEven(Box::new(inner))
    }

    pub fn union(a: IndexSet, b: IndexSet) -> Self {
        IndexSet::Union(Box::new(a), Box::new(b))
    }

    pub fn l_set(inner: IndexSet) -> Self {
        IndexSet::LSet(Box::new(inner))
    }

    /// Every element `<= bound`, or a truncation error when the rule does not
    /// determine them.
    pub fn upto(&self, bound: u64) -> Result<Vec<u64>> {
        match self {
            IndexSet::Explicit { prefix, through } => {
                if bound > *through {
                    return Err(Error::truncation("explicit index set", bound, *through));
                }
                Ok(prefix.iter().copied().take_while(|&v| v <= bound).collect())
            }
            IndexSet::Arithmetic { a, d } => {
                if bound < *a {
                    return Ok(Vec::new());
                }
                let count = (bound - a) / d + 1;
                Ok((0..count).map(|j| a + j * d).collect())
            }
            IndexSet::DoublingOdd(m) => Ok(m
                .upto(bound.div_ceil(2))?
                .into_iter()
                .map(|v| 2 * v - 1)
                .filter(|&v| v <= bound)
                .collect()),
            IndexSet::DoublingEven(m) => {
                Ok(m.upto(bound / 2)?.into_iter().map(|v| 2 * v).collect())
            }
            IndexSet::Union(a, b) => {
                let mut v = a.upto(bound)?;
                v.extend(b.upto(bound)?);
                v.sort_unstable();
                v.dedup();
                Ok(v)
            }
            IndexSet::LSet(n_set) => {
                let mut last = 0u64;
                while j_interval_u64(last + 1).is_some_and(|(lo, _)| lo <= bound) {
                    last += 1;
                }
                let mut out = Vec::new();
                for n in n_set.upto(last)? {
                    let (lo, hi) = j_interval_u64(n).expect("n <= last");
                    out.extend(lo..=hi.min(bound));
                }
                Ok(out)
            }
        }
    }

    /// The first `k` elements.
    pub fn prefix(&self, k: usize) -> Result<Vec<u64>> {
        match self {
            IndexSet::Explicit { prefix, through } => {
                if k > prefix.len() {
                    return Err(Error::truncation(
                        format!("explicit index set known through {through}"),
                        k as u64,
                        prefix.len() as u64,
                    ));
                }
                Ok(prefix[..k].to_vec())
            }
            IndexSet::Arithmetic { a, d } => (0..k as u64)
                .map(|j| {
                    j.checked_mul(*d)
                        .and_then(|s| s.checked_add(*a))
                        .ok_or_else(|| Error::TooLarge("arithmetic index overflows u64".into()))
                })
                .collect(),
            IndexSet::DoublingOdd(m) => Ok(m.prefix(k)?.into_iter().map(|v| 2 * v - 1).collect()),
            IndexSet::DoublingEven(m) => Ok(m.prefix(k)?.into_iter().map(|v| 2 * v).collect()),
            IndexSet::Union(a, b) => {
                let mut v = a.prefix(k)?;
                v.extend(b.prefix(k)?);
                v.sort_unstable();
                v.dedup();
                v.truncate(k);
                Ok(v)
            }
            IndexSet::LSet(_) => {
                if k == 0 {
                    return Ok(Vec::new());
                }
                let mut bound = 2 * k as u64;
                loop {
                    let v = self.upto(bound)?;
                    if v.len() >= k {
                        return Ok(v[..k].to_vec());
                    }
                    bound = bound
                        .checked_mul(2)
                        .ok_or_else(|| Error::TooLarge("index set too sparse".into()))?;
                }
            }
        }
    }

    /// `M(J) = {m_j : j in J}` for 1-based positions `J`.
    pub fn select(&self, positions: &[u64]) -> Result<Vec<u64>> {
        if positions.first() == Some(&0) {
            return Err(Error::invalid("positions start at 1"));
        }
        let k = positions.iter().copied().max().unwrap_or(0);
        let prefix = self.prefix(k as usize)?;
        let mut out: Vec<u64> = positions.iter().map(|&j| prefix[j as usize - 1]).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn rule(&self) -> String {
        self.to_string()
    }

    /// `{"rule": ..., "prefix": [...]}` with up to `k` elements.
    pub fn to_json(&self, k: usize) -> Value {
        let prefix = match self {
            IndexSet::Explicit { prefix, .. } => prefix.iter().copied().take(k).collect(),
            _ => self.prefix(k).unwrap_or_default(),
        };
        json!({"rule": self.rule(), "prefix": prefix})
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSet::Explicit { through, .. } => write!(f, "explicit(through={through})"),
            IndexSet::Arithmetic { a, d } => write!(f, "arithmetic({a},{d})"),
            IndexSet::DoublingOdd(m) => write!(f, "doubling-odd({m})"),
            IndexSet::DoublingEven(m) => write!(f, "doubling-even({m})"),
            IndexSet::Union(a, b) => write!(f, "union({a},{b})"),
            IndexSet::LSet(n) => write!(f, "mpb-L({n})"),
        }
    }
}

impl FromStr for IndexSet {
    type Err = Error;

    /// Rules: `all`, `even`, `odd`, `arith(a,d)`, `odd-double(X)`,
    /// `even-double(X)`, `union(X,Y)`, `lset(X)`, or a JSON array giving an
    /// explicit prefix.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let v: Vec<u64> = serde_json::from_str(s)
                .map_err(|e| Error::Parse(format!("index set `{s}`: {e}")))?;
            return IndexSet::explicit(v);
        }
        let (name, args) = match s.find('(') {
            Some(open) if s.ends_with(')') => (&s[..open], split_args(&s[open + 1..s.len() - 1])?),
            Some(_) => return Err(Error::Parse(format!("unbalanced rule `{s}`"))),
            None => (s, Vec::new()),
        };
        let want = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!("rule `{name}` takes {n} argument(s)")))
            }
        };
        let num = |a: &str| -> Result<u64> {
            a.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("expected an integer, got `{a}`")))
        };
        match name.trim() {
            "all" => want(0).and_then(|_| IndexSet::arithmetic(1, 1)),
            "even" | "evens" => want(0).and_then(|_| IndexSet::arithmetic(2, 2)),
            "odd" | "odds" => want(0).and_then(|_| IndexSet::arithmetic(1, 2)),
            "arith" | "arithmetic" => {
                want(2)?;
                IndexSet::arithmetic(num(args[0])?, num(args[1])?)
            }
            "odd-double" => {
                want(1)?;
                Ok(IndexSet::doubling_odd(args[0].parse()?))
            }
            "even-double" => {
                want(1)?;
                Ok(IndexSet::doubling_even(args[0].parse()?))
            }
            "union" => {
                want(2)?;
                Ok(IndexSet::union(args[0].parse()?, args[1].parse()?))
            }
            "lset" => {
                want(1)?;
                Ok(IndexSet::l_set(args[0].parse()?))
            }
            other => Err(Error::Parse(format!("unknown index rule `{other}`"))),
        }
    }
}

/// Splits on commas that are not nested inside brackets.
fn split_args(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced arguments `{s}`")));
        }
    }
    if !s.trim().is_empty() {
        out.push(&s[start..]);
    }
    Ok(out)
}

/// Truncated index with its maximizing `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedGlIndex {
    pub value: usize,
    pub witness: Vec<u64>,
    pub k: usize,
}

impl TruncatedGlIndex {
    pub fn to_json(&self) -> Value {
        json!({"value": self.value, "witness": self.witness, "K": self.k})
    }
}

/// Calls `visit` on every `r`-subset of `items` in lexicographic order;
/// stops early when `visit` returns `false`.
fn for_each_combination(items: &[u64], r: usize, visit: &mut impl FnMut(&[u64]) -> bool) {
    fn rec(
        items: &[u64],
        r: usize,
        from: usize,
        cur: &mut Vec<u64>,
        visit: &mut impl FnMut(&[u64]) -> bool,
    ) -> bool {
        if cur.len() == r {
            return visit(cur);
        }
        let need = r - cur.len();
        for i in from..=items.len() - need {
            cur.push(items[i]);
            let go_on = rec(items, r, i + 1, cur, visit);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    if r <= items.len() {
        rec(items, r, 0, &mut Vec::with_capacity(r), visit);
    }
}

/// Maximum of `tau_1(M(J))` over `J` inside `{1..K}` with `N(J)` Schreier.
///
/// Enlarging `J` never lowers `tau_1(M(J))`, so for each first index `j_1`
/// only sets of the largest admissible size `min(n_{j_1}, K - j_1 + 1)` are
/// tried. A first index is skipped when `tau_1(M({j_1..K}))` cannot beat the
/// incumbent. The witness is the lexicographically first maximizer among
/// those largest sets.
pub fn gl_index_truncated(m_set: &IndexSet, n_set: &IndexSet, k: usize) -> Result<TruncatedGlIndex> {
    if k == 0 {
        return Err(Error::invalid("truncation K must be positive"));
    }
    let m = m_set.prefix(k)?;
    let n = n_set.prefix(k)?;
    let mut best = 0usize;
    let mut witness = Vec::new();
    let mut buf = Vec::with_capacity(k);
    for j1 in 1..=k {
        let upper = tau1_count(&m[j1 - 1..]);
        if upper <= best {
            continue;
        }
        let size = (n[j1 - 1] as usize).min(k - j1 + 1);
        let rest: Vec<u64> = (j1 as u64 + 1..=k as u64).collect();
        for_each_combination(&rest, size - 1, &mut |combo| {
            buf.clear();
            buf.push(m[j1 - 1]);
            buf.extend(combo.iter().map(|&j| m[j as usize - 1]));
            let tau = tau1_count(&buf);
            if tau > best {
                best = tau;
                witness.clear();
                witness.push(j1 as u64);
                witness.extend_from_slice(combo);
            }
            best < upper
        });
    }
    Ok(TruncatedGlIndex {
        value: best,
        witness,
        k,
    })
}

/// Whether `a_i >= b_i` for all `i <= K`.
pub fn is_spread_of(a: &IndexSet, b: &IndexSet, k: usize) -> Result<bool> {
    let (a, b) = (a.prefix(k)?, b.prefix(k)?);
    Ok(a.iter().zip(&b).all(|(x, y)| x >= y))
}

/// A finite map from a window of `M` into `N`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaMap {
    pub assignments: BTreeMap<u64, u64>,
}

impl ThetaMap {
    pub fn new(assignments: impl IntoIterator<Item = (u64, u64)>) -> Self {
        ThetaMap {
            assignments: assignments.into_iter().collect(),
        }
    }
}

/// Largest fiber size of `theta`, and the largest covering number of a
/// preimage `theta^{-1}(F)` over the supplied Schreier sets.
pub fn theta_fiber_stats(theta: &ThetaMap, window: &[SchreierSet]) -> (usize, usize) {
    let mut fibers: BTreeMap<u64, usize> = BTreeMap::new();
    for &n in theta.assignments.values() {
        *fibers.entry(n).or_default() += 1;
    }
    let max_fiber = fibers.values().copied().max().unwrap_or(0);
    let max_tau = window
        .iter()
        .map(|f| {
            let pre: Vec<u64> = theta
                .assignments
                .iter()
                .filter(|(_, n)| f.as_set().contains(n))
                .map(|(&m, _)| m)
                .collect();
            tau1_count(&pre)
        })
        .max()
        .unwrap_or(0);
    (max_fiber, max_tau)
}

/// Domination constant derived from a truncated index: `C = index` for
/// `B_p` and `C = index^(1/p)` for `S_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct DominationConstant {
    pub index: TruncatedGlIndex,
    pub space: Space,
    pub p: Exponent,
}

impl DominationConstant {
    pub fn value(&self) -> f64 {
        let g = self.index.value as f64;
        match self.space {
            Space::Bp => g,
            Space::Sp => g.powf(1.0 / self.p.as_f64()),
        }
    }

    /// `C^p`, exact in exact mode.
    pub fn power<S: Scalar>(&self) -> Result<S> {
        let g = S::from_count(self.index.value as u64);
        match self.space {
            Space::Bp => g.pow_p(self.p),
            Space::Sp => Ok(g),
        }
    }

    /// Compares `||sum a_j e_{n_j}||` with `C ||sum a_j e_{m_j}||` for the
    /// first `|coeffs|` positions.
    pub fn check<S: Scalar>(
        &self,
        m_set: &IndexSet,
        n_set: &IndexSet,
        coeffs: &[S],
    ) -> Result<DominationCheck<S>> {
        if coeffs.len() > self.index.k {
            return Err(Error::invalid(format!(
                "{} coefficients exceed the truncation K = {}",
                coeffs.len(),
                self.index.k
            )));
        }
        let combo = |set: &IndexSet| -> Result<CoeffVector<S>> {
            let idx = set.prefix(coeffs.len())?;
            CoeffVector::from_entries(idx.into_iter().zip(coeffs.iter().cloned()))
        };
        let norm = |x: &CoeffVector<S>| match self.space {
            Space::Sp => schreier_norm(x, self.p),
            Space::Bp => baernstein_norm(x, self.p),
        };
        let lhs = norm(&combo(n_set)?)?;
        let rhs = norm(&combo(m_set)?)?;
        let bound = self.power::<S>()? * rhs.power.clone();
        let holds = lhs.power.le_tol(&bound);
        Ok(DominationCheck { lhs, rhs, holds })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominationCheck<S> {
    pub lhs: NormResult<S>,
    pub rhs: NormResult<S>,
    pub holds: bool,
}

pub fn domination_constant(
    m_set: &IndexSet,
    n_set: &IndexSet,
    k: usize,
    p: Exponent,
    space: Space,
) -> Result<DominationConstant> {
    if space == Space::Bp && p.as_f64() <= 1.0 {
        return Err(Error::UnsupportedExponent("Baernstein norms need p > 1".into()));
    }
    Ok(DominationConstant {
        index: gl_index_truncated(m_set, n_set, k)?,
        space,
        p,
    })
}

pub fn check_domination<S: Scalar>(
    m_set: &IndexSet,
    n_set: &IndexSet,
    k: usize,
    p: Exponent,
    space: Space,
    coeffs: &[S],
) -> Result<DominationCheck<S>> {
    domination_constant(m_set, n_set, k, p, space)?.check(m_set, n_set, coeffs)
}
