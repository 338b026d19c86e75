//! Closed forms for the chain's jump law and equilibrium distribution.
//!
//! Tail masses are always evaluated in closed form. Partial sums of `f_k`
//! approach 1 while the terms approach 0, so summing toward 1 loses every
//! digit that matters for the heavy tail.
//!
//! Differences of powers such as `k^-a - (k+1)^-a` are computed as
//! `-k^-a * expm1(-a * ln1p(1/k))`, which keeps full relative precision for
//! any `k`. The second difference behind `f_k` uses a binomial series once
//! `k` is large enough for the direct form to cancel.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Below this index `f_k` is taken as a difference of two first differences.
const SERIES_FROM: f64 = 32.0;

#[inline]
pub(crate) fn pow_neg(x: f64, alpha: f64) -> f64 {
    (-alpha * x.ln()).exp()
}

/// `lo^-a - hi^-a` for `0 < lo <= hi`.
#[inline]
pub(crate) fn power_diff(lo: f64, hi: f64, alpha: f64) -> f64 {
    -pow_neg(lo, alpha) * (-alpha * ((hi - lo) / lo).ln_1p()).exp_m1()
}

/// `k^-a - (k+1)^-a`.
#[inline]
pub(crate) fn unit_gap(k: f64, alpha: f64) -> f64 {
    -pow_neg(k, alpha) * (-alpha * k.recip().ln_1p()).exp_m1()
}

/// `k^-a - 2 (k+1)^-a + (k+2)^-a`, positive for every `k >= 1`.
pub(crate) fn second_gap(k: f64, alpha: f64) -> f64 {
    if k < SERIES_FROM {
        return unit_gap(k, alpha) - unit_gap(k + 1.0, alpha);
    }
    // k^-a * sum_{n>=2} C(-a, n) (2^n - 2) k^-n
    let x = k.recip();
    let mut coef = alpha * (alpha + 1.0) / 2.0 * x * x;
    let mut pow2 = 4.0;
    let mut sum = 0.0;
    for n in 2..64 {
        let term = coef * (pow2 - 2.0);
        sum += term;
        if term.abs() <= sum.abs() * 1e-17 {
            break;
        }
        let n = n as f64;
        coef *= -(alpha + n) / (n + 1.0) * x;
        pow2 *= 2.0;
    }
    pow_neg(k, alpha) * sum
}

/// `sum_{i=lo}^{hi} second_gap(i)`, i.e. the jump mass of `[lo, hi]` up to the
/// factor `(1 - pi0) / pi0`.
#[inline]
pub(crate) fn window_gap(lo: u64, hi: u64, alpha: f64) -> f64 {
    if lo == hi {
        second_gap(lo as f64, alpha)
    } else {
        unit_gap(lo as f64, alpha) - unit_gap(hi as f64 + 1.0, alpha)
    }
}

/// `f_k`: probability of jumping from state 0 to state `k`.
pub fn jump_prob(k: u64, params: &ModelParams) -> f64 {
    let a = params.alpha();
    if k == 0 {
        let one_minus_half_pow = -(-a * core::f64::consts::LN_2).exp_m1();
        1.0 - params.odds() * one_minus_half_pow
    } else {
        params.odds() * second_gap(k as f64, a)
    }
}

/// `sum_{i >= k} f_i = ((1 - pi0) / pi0) (k^-a - (k+1)^-a)`.
///
/// This is also `1 - F(k)` for the recurrence-time distribution of state 0.
/// `jump_tail(0)` is the total mass, 1.
pub fn jump_tail(k: u64, params: &ModelParams) -> f64 {
    if k == 0 {
        1.0
    } else {
        params.odds() * unit_gap(k as f64, params.alpha())
    }
}

/// Equilibrium probability of state `k`.
pub fn equilibrium_pi(k: u64, params: &ModelParams) -> f64 {
    if k == 0 {
        params.pi0()
    } else {
        (1.0 - params.pi0()) * unit_gap(k as f64, params.alpha())
    }
}

/// `sum_{i >= k} pi_i`, which is `(1 - pi0) k^-a` for `k >= 1`.
pub fn equilibrium_tail(k: u64, params: &ModelParams) -> f64 {
    if k == 0 {
        1.0
    } else {
        (1.0 - params.pi0()) * pow_neg(k as f64, params.alpha())
    }
}

/// `P(X' in [i, j] | X' >= k, X = 0)` for `0 < k <= i <= j`.
pub fn conditional_range_prob(i: u64, j: u64, k: u64, params: &ModelParams) -> Result<f64> {
    if k == 0 || k > i || i > j {
        return Err(Error::OrderingViolation { k, i, j });
    }
    let a = params.alpha();
    let p = window_gap(i, j, a) / unit_gap(k as f64, a);
    Ok(p.clamp(0.0, 1.0))
}
