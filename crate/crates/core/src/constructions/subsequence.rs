//! Subsequence selection for normalized block sequences, and the dyadic
//! grouping that drives sup norms to zero.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::norms::{baernstein_norm, schreier_norm, sup_norm, NormResult, Space};
use crate::scalar::{Exponent, Mode, Scalar};
use crate::vector::{BlockSequence, CoeffVector};

/// Selected 1-based indices; `shortfall` is set when the input ran out
/// before the recursion could pick another block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub indices: Vec<usize>,
    pub shortfall: bool,
}

impl Selection {
    pub fn to_json(&self) -> Value {
        json!({"indices": self.indices, "shortfall": self.shortfall})
    }
}

fn norm<S: Scalar>(x: &CoeffVector<S>, p: Exponent, space: Space) -> Result<NormResult<S>> {
    match space {
        Space::Sp => schreier_norm(x, p),
        Space::Bp => baernstein_norm(x, p),
    }
}

fn check_normalized<S: Scalar>(blocks: &BlockSequence<S>, p: Exponent, space: Space) -> Result<()> {
    let one = S::from_count(1);
    for (i, b) in blocks.blocks().iter().enumerate() {
        if !norm(b, p, space)?.power.eq_tol(&one) {
            return Err(Error::invalid(format!("block {} is not normalized in {space}", i + 1)));
        }
    }
    Ok(())
}

/// `delta_k = min(1/2, eps / (2^k p 2^(p-1)))`, so that
/// `(s + t)^p <= s^p + eps / 2^k` for `s` in `[0, 1]` and `t` in `[0, delta_k]`.
pub fn delta<S: Scalar>(k: u32, p: Exponent, eps: &S) -> Result<S> {
    let half = S::from_ratio(1, 2);
    let two_pm1 = match p.as_integer() {
        Some(q) => S::from_count(1u64 << (q - 1)),
        None => S::from_float(2f64.powf(p.as_f64() - 1.0))?,
    };
    let slope = S::from_float(p.as_f64())? * two_pm1;
    let d = eps.clone() * S::inv_pow2(k) / slope;
    Ok(if d < half { d } else { half })
}

/// Greedy selection following the recursive smallness conditions.
///
/// `S_p`: `j_1 = 1` and `||u_{j_{k+1}}||_inf^p <= eps / max supp u_{j_k}`.
/// `B_p`: `j_1 = 1` and `||u_i||_inf <= delta_k / max supp u_{j_k}` for all
/// `i >= j_{k+1}`. On a finite input the `B_p` condition reduces to the
/// chosen block once sup norms are strictly decreasing, which is required.
pub fn dominated_subsequence<S: Scalar>(
    blocks: &BlockSequence<S>,
    p: Exponent,
    space: Space,
    eps: f64,
) -> Result<Selection> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::invalid("eps must be positive"));
    }
    if space == Space::Bp && p.as_f64() <= 1.0 {
        return Err(Error::UnsupportedExponent("Baernstein norms need p > 1".into()));
    }
    if blocks.is_empty() {
        return Ok(Selection {
            indices: Vec::new(),
            shortfall: true,
        });
    }
    check_normalized(blocks, p, space)?;
    let sups: Vec<S> = blocks.blocks().iter().map(sup_norm).collect();
    if space == Space::Bp && sups.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::CannotSelect(
            "sup norms must be strictly decreasing for the B_p selection".into(),
        ));
    }
    let eps_s = S::from_float(eps)?;
    let mut indices = vec![1usize];
    let mut cur = 0usize;
    loop {
        let k = indices.len() as u32;
        let m = S::from_count(blocks.blocks()[cur].max_support().expect("non-zero block"));
        let next = (cur + 1..blocks.len()).find(|&i| -> bool {
            match space {
                Space::Sp => sups[i]
                    .pow_p(p)
                    .map(|s| (s * m.clone()).le_tol(&eps_s))
                    .unwrap_or(false),
                Space::Bp => delta(k, p, &eps_s)
                    .map(|d| (sups[i].clone() * m.clone()).le_tol(&d))
                    .unwrap_or(false),
            }
        });
        match next {
            Some(i) => {
                indices.push(i + 1);
                cur = i;
            }
            None => {
                return Ok(Selection {
                    indices,
                    shortfall: true,
                })
            }
        }
        if cur + 1 == blocks.len() {
            return Ok(Selection {
                indices,
                shortfall: false,
            });
        }
    }
}

/// Outcome of one domination test for a selected subsequence.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsequenceCheck<S> {
    pub lhs_power: S,
    pub bound_power: S,
    pub holds: bool,
}

/// Tests `||sum a_k u_{j_k}||^p <= (1 + eps) max |a_k|^p` for `S_p` and
/// `<= (1 + eps) sum |a_k|^p` for `B_p`.
pub fn check_selection<S: Scalar>(
    blocks: &BlockSequence<S>,
    selection: &Selection,
    p: Exponent,
    space: Space,
    eps: f64,
    coeffs: &[S],
) -> Result<SubsequenceCheck<S>> {
    if coeffs.len() > selection.indices.len() {
        return Err(Error::invalid("more coefficients than selected blocks"));
    }
    let idx: Vec<usize> = selection.indices[..coeffs.len()].iter().map(|i| i - 1).collect();
    let x = blocks.combination(&idx, coeffs)?;
    let lhs_power = norm(&x, p, space)?.power;
    let scale = S::from_count(1) + S::from_float(eps)?;
    let base = match space {
        Space::Sp => coeffs
            .iter()
            .map(|a| a.abs().pow_p(p))
            .try_fold(S::from_count(0), |acc, v| v.map(|v| acc.max_of(v)))?,
        Space::Bp => coeffs
            .iter()
            .map(|a| a.abs().pow_p(p))
            .try_fold(S::from_count(0), |acc, v| v.map(|v| acc + v))?,
    };
    let bound_power = scale * base;
    let holds = lhs_power.le_tol(&bound_power);
    Ok(SubsequenceCheck {
        lhs_power,
        bound_power,
        holds,
    })
}

/// One dyadic group `v_n = sum_{2^(n-1) <= j < 2^n} w_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoublingGroup<S> {
    /// 1-based inclusive range of input blocks.
    pub members: (usize, usize),
    pub v_norm: NormResult<S>,
    pub u: CoeffVector<S>,
    pub u_sup: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoublingOutput<S> {
    pub delta: S,
    pub groups: Vec<DoublingGroup<S>>,
}

impl<S: Scalar> DoublingOutput<S> {
    pub fn blocks(&self) -> Result<BlockSequence<S>> {
        BlockSequence::new(self.groups.iter().map(|g| g.u.clone()).collect())
    }

    /// Lower bound on `||v_n||^p`: `2^(n-1) delta^p` for `S_p`,
    /// `(2^(n-1) delta)^p` for `B_p`.
    pub fn lower_bound_power(&self, n: usize, p: Exponent, space: Space) -> Result<S> {
        let count = S::from_count(1u64 << (n - 1));
        match space {
            Space::Sp => Ok(count * self.delta.pow_p(p)?),
            Space::Bp => (count * self.delta.clone()).pow_p(p),
        }
    }
}

/// Groups normalized blocks dyadically and renormalizes each group.
///
/// Exact mode divides by the norm itself, so it needs `p = 1`.
pub fn doubling_blocks<S: Scalar>(
    blocks: &BlockSequence<S>,
    space: Space,
    p: Exponent,
) -> Result<DoublingOutput<S>> {
    if blocks.is_empty() {
        return Err(Error::invalid("at least one block is needed"));
    }
    if S::MODE == Mode::Exact && !p.is_one() {
        return Err(Error::UnsupportedExponent(
            "exact renormalization needs p = 1".into(),
        ));
    }
    check_normalized(blocks, p, space)?;
    let delta = blocks
        .blocks()
        .iter()
        .map(sup_norm)
        .reduce(|a, b| if b < a { b } else { a })
        .expect("non-empty");
    let mut groups = Vec::new();
    let mut n = 1u32;
    while (1usize << n) - 1 <= blocks.len() {
        let (lo, hi) = (1usize << (n - 1), (1usize << n) - 1);
        let idx: Vec<usize> = (lo - 1..hi).collect();
        let ones = vec![S::from_count(1); idx.len()];
        let v = blocks.combination(&idx, &ones)?;
        let v_norm = norm(&v, p, space)?;
        let scale = match v_norm.exact_value() {
            Some(value) => S::from_count(1) / value,
            None => S::from_float(1.0 / v_norm.value)?,
        };
        let u = v.scale(&scale);
        let u_sup = sup_norm(&u);
        groups.push(DoublingGroup {
            members: (lo, hi),
            v_norm,
            u,
            u_sup,
        });
        n += 1;
    }
    Ok(DoublingOutput { delta, groups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::schreier::maximal_chain_from;

    fn units<S: Scalar>(n: u64) -> BlockSequence<S> {
        BlockSequence::new((1..=n).map(|i| CoeffVector::unit(i).unwrap()).collect()).unwrap()
    }

    /// Each block is `1_F / |F|` for successive maximal `F`.
    fn flat_blocks(start: u64, count: usize) -> BlockSequence<Rational> {
        let chain = maximal_chain_from(start, count).unwrap();
        BlockSequence::new(
            chain
                .sets()
                .iter()
                .map(|f| CoeffVector::constant_on(f.as_set(), Rational::from_ratio(1, f.len())))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn unit_vectors_stall() {
        let s = dominated_subsequence(&units::<Rational>(6), Exponent::Integer(2), Space::Sp, 0.5).unwrap();
        assert_eq!(s.indices, vec![1]);
        assert!(s.shortfall);
        let s = dominated_subsequence(&units::<Rational>(6), Exponent::Integer(2), Space::Sp, 1e9).unwrap();
        assert_eq!(s.indices, vec![1, 2, 3, 4, 5, 6]);
        assert!(!s.shortfall);
    }

    #[test]
    fn bp_needs_decreasing_sups() {
        let r = dominated_subsequence(&units::<Rational>(3), Exponent::Integer(2), Space::Bp, 1.0);
        assert!(matches!(r, Err(Error::CannotSelect(_))));
    }

    #[test]
    fn bp_flat_selection_dominated() {
        let blocks = flat_blocks(1, 8);
        let p = Exponent::Integer(2);
        let sel = dominated_subsequence(&blocks, p, Space::Bp, 15.0).unwrap();
        assert_eq!(sel.indices, vec![1, 2, 4, 6]);
        assert!(sel.shortfall);
        let coeffs: Vec<Rational> = [1, -2, 3, -1].iter().map(|&v| Rational::from_ratio(v, 1)).collect();
        let chk = check_selection(&blocks, &sel, p, Space::Bp, 15.0, &coeffs).unwrap();
        assert!(chk.holds);
    }

    #[test]
    fn delta_formula() {
        let d: Rational = delta(1, Exponent::Integer(2), &Rational::from_count(1)).unwrap();
        assert_eq!(d, Rational::from_ratio(1, 8));
        let d: Rational = delta(1, Exponent::Integer(2), &Rational::from_count(100)).unwrap();
        assert_eq!(d, Rational::from_ratio(1, 2));
    }

    #[test]
    fn doubling_units_s1() {
        let out = doubling_blocks(&units::<Rational>(7), Space::Sp, Exponent::Integer(1)).unwrap();
        assert_eq!(out.groups.len(), 3);
        assert_eq!(out.groups[1].members, (2, 3));
        assert_eq!(out.groups[1].v_norm.power, Rational::from_count(2));
        assert_eq!(out.groups[1].u_sup, Rational::from_ratio(1, 2));
        for (i, g) in out.groups.iter().enumerate() {
            let lb = out.lower_bound_power(i + 1, Exponent::Integer(1), Space::Sp).unwrap();
            assert!(g.v_norm.power >= lb);
            assert!(g.u_sup.clone() * g.v_norm.power.clone() <= Rational::from_count(1));
        }
        let single = doubling_blocks(&units::<Rational>(1), Space::Sp, Exponent::Integer(1)).unwrap();
        assert_eq!(single.groups.len(), 1);
        assert_eq!(single.groups[0].u, CoeffVector::unit(1).unwrap());
    }
}
