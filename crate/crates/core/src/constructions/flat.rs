//! Block-constant vectors over chains of maximal Schreier sets.

use crate::error::{Error, Result};
use crate::norms::{baernstein_norm, schreier_norm, Space};
use crate::scalar::{Exponent, Mode, Scalar};
use crate::schreier::SchreierChain;
use crate::vector::{CoeffVector, Run};

fn check_maximal(chain: &SchreierChain) -> Result<()> {
    match chain.sets().iter().position(|f| !f.is_maximal()) {
        Some(i) => Err(Error::invalid(format!("chain set {} is not maximal", i + 1))),
        None => Ok(()),
    }
}

fn build<S: Scalar>(chain: &SchreierChain, value: impl Fn(u64) -> Result<S>) -> Result<CoeffVector<S>> {
    check_maximal(chain)?;
    let mut runs = Vec::with_capacity(chain.len());
    for f in chain.sets() {
        let v = value(f.len())?;
        for &(lo, hi) in f.as_set().runs() {
            runs.push(Run {
                start: lo,
                len: hi - lo + 1,
                value: v.clone(),
            });
        }
    }
    CoeffVector::from_runs(runs)
}

/// `sum_j |F_j|^{-1/p} 1_{F_j}` for `S_p` and `sum_j |F_j|^{-1} 1_{F_j}` for `B_p`.
///
/// In exact mode the `S_p` vector exists only when every `|F_j|` is a perfect
/// `p`-th power; [`flat_vector_powers`] always works.
pub fn flat_vector<S: Scalar>(chain: &SchreierChain, p: Exponent, space: Space) -> Result<CoeffVector<S>> {
    build(chain, |size| match space {
        Space::Bp => Ok(S::from_ratio(1, size)),
        Space::Sp if p.is_one() => Ok(S::from_ratio(1, size)),
        Space::Sp if S::MODE == Mode::Exact => match exact_root(size, p) {
            Some(r) => Ok(S::from_ratio(1, r)),
            None => Err(Error::UnsupportedExponent(format!(
                "flat S_p vector has the irrational entry {size}^(-1/{p})"
            ))),
        },
        Space::Sp => S::from_float((size as f64).powf(-1.0 / p.as_f64())),
    })
}

/// `r` with `r^p = size`, when `p` is an integer and such `r` exists.
fn exact_root(size: u64, p: Exponent) -> Option<u64> {
    let q = p.as_integer()?;
    let guess = (size as f64).powf(1.0 / q as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|r| r.checked_pow(q) == Some(size))
}

/// `|x|^p` for the `S_p` flat vector `x`: every entry of `F_j` equals `1/|F_j|`.
pub fn flat_vector_powers<S: Scalar>(chain: &SchreierChain) -> Result<CoeffVector<S>> {
    build(chain, |size| Ok(S::from_ratio(1, size)))
}

/// `||x||^p` of the flat vector for `chain`. For `S_p` this is computed as the
/// `S_1` norm of `|x|^p`, which stays rational in exact mode.
pub fn flat_norm_power<S: Scalar>(chain: &SchreierChain, p: Exponent, space: Space) -> Result<S> {
    match space {
        Space::Sp => Ok(schreier_norm(&flat_vector_powers::<S>(chain)?, Exponent::Integer(1))?.power),
        Space::Bp => Ok(baernstein_norm(&flat_vector::<S>(chain, p, space)?, p)?.power),
    }
}

/// Bounds on `||x||^p` for a flat vector over `m` sets: `[1, 2]` for `S_p`
/// and `[m, 2^p m]` for `B_p`.
pub fn flat_bounds_power<S: Scalar>(m: usize, p: Exponent, space: Space) -> Result<(S, S)> {
    match space {
        Space::Sp => Ok((S::from_count(1), S::from_count(2))),
        Space::Bp => {
            let m = S::from_count(m as u64);
            let two_p = S::from_count(2).pow_p(p)?;
            Ok((m.clone(), two_p * m))
        }
    }
}
