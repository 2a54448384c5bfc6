//! The extremal family for the `l_p` / `l_inf` / `S_1` interpolation inequality.
//!
//! `x(j) = 2^-k` for `1 <= j < 2^(k+1)` and `x(j) = 2^-n` for
//! `2^n <= j < 2^(n+1)`, `k < n <= T`.

use crate::error::{Error, Result};
use crate::norms::{lp_norm_power, schreier_norm, sup_norm};
use crate::scalar::{Exponent, Scalar};
use crate::vector::{CoeffVector, Run};

/// Largest supported truncation; the support ends at `2^(T+1) - 1`.
pub const MAX_TRUNCATION: u32 = 62;

pub fn jameson_extremal<S: Scalar>(k: u32, t: u32) -> Result<CoeffVector<S>> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    if t <= k {
        return Err(Error::invalid(format!("truncation T = {t} must exceed k = {k}")));
    }
    if t > MAX_TRUNCATION {
        return Err(Error::TooLarge(format!("truncation T = {t} exceeds {MAX_TRUNCATION}")));
    }
    let mut runs = vec![Run {
        start: 1,
        len: (1u64 << (k + 1)) - 1,
        value: S::inv_pow2(k),
    }];
    for n in k + 1..=t {
        runs.push(Run {
            start: 1u64 << n,
            len: 1u64 << n,
            value: S::inv_pow2(n),
        });
    }
    CoeffVector::from_runs(runs)
}

/// `(3 * 2^(p-1) - 2) / (2^(p-1) - 1)`, the proven upper constant.
pub fn upper_constant(p: f64) -> f64 {
    let h = 2f64.powf(p - 1.0);
    (3.0 * h - 2.0) / (h - 1.0)
}

/// `(2^p - 1) / (2^(p-1) - 1)`, the limit of the extremal ratios.
pub fn lower_constant(p: f64) -> f64 {
    let h = 2f64.powf(p - 1.0);
    (2.0 * h - 1.0) / (h - 1.0)
}

/// Closed form of the truncated ratio
/// `2 - 2^-k + (1 - 2^((k-T)(p-1))) / (2^(p-1) - 1)`.
pub fn ratio_formula(k: u32, t: u32, p: f64) -> f64 {
    let h = 2f64.powf(p - 1.0);
    let lost = 2f64.powf((k as f64 - t as f64) * (p - 1.0));
    2.0 - 2f64.powi(-(k as i32)) + (1.0 - lost) / (h - 1.0)
}

/// Contribution of the blocks beyond `T` to the untruncated ratio, summed
/// term by term.
pub fn dropped_tail(k: u32, t: u32, p: f64) -> f64 {
    let mut sum = 0.0;
    let mut n = t + 1;
    loop {
        let term = 2f64.powf((k as f64 - n as f64) * (p - 1.0));
        sum += term;
        if term < sum * 1e-17 || n > t + 4000 {
            return sum;
        }
        n += 1;
    }
}

/// Measured pieces of `||x||_p^p <= K ||x||_inf^(p-1) ||x||_{S_1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct JamesonTerms<S> {
    pub lp_power: S,
    pub sup: S,
    pub s1: S,
}

impl<S: Scalar> JamesonTerms<S> {
    pub fn measure(x: &CoeffVector<S>, p: Exponent) -> Result<Self> {
        Ok(JamesonTerms {
            lp_power: lp_norm_power(x, p)?,
            sup: sup_norm(x),
            s1: schreier_norm(x, Exponent::Integer(1))?.power,
        })
    }

    /// `||x||_p^p / (||x||_inf^(p-1) ||x||_{S_1})`; zero for the zero vector.
    pub fn ratio(&self, p: Exponent) -> f64 {
        let den = self.sup.to_float().powf(p.as_f64() - 1.0) * self.s1.to_float();
        if den == 0.0 {
            0.0
        } else {
            self.lp_power.to_float() / den
        }
    }

    /// Whether `||x||_p^p <= c ||x||_inf^(p-1) ||x||_{S_1}` at the scalar
    /// type's tolerance.
    pub fn satisfies(&self, c: &S, p: Exponent) -> Result<bool> {
        let p_minus_one = Exponent::new(p.as_f64() - 1.0).ok();
        let sup_pow = match p_minus_one {
            Some(q) => self.sup.pow_p(q)?,
            // 0 < p - 1 < 1 only arises in float mode.
            None => S::from_float(self.sup.to_float().powf(p.as_f64() - 1.0))?,
        };
        Ok(self.lp_power.le_tol(&(c.clone() * sup_pow * self.s1.clone())))
    }
}
