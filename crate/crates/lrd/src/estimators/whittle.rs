//! Local Whittle estimator.

use super::periodogram::{fourier_freq, raw_periodogram};
use super::{centered, require_len, EstimateError, HurstEstimate, Method};

const MIN_LEN: usize = 1 << 10;
const H_LO: f64 = 0.01;
const H_HI: f64 = 0.99;
const TOL: f64 = 1e-11;
const MAX_ITER: usize = 200;

/// Local Whittle over every positive Fourier frequency below Nyquist,
/// `m = floor((n - 1) / 2)`.
///
/// The full band is what reproduces published batteries on FGN, the
/// intermittency map and the Markov chain alike. It includes frequencies far
/// from the origin, so short-range structure biases the estimate upward; use
/// [`local_whittle_with_bandwidth`] with e.g. `n^0.65` for the textbook
/// semiparametric choice.
pub fn local_whittle_estimate(series: &[f64]) -> Result<HurstEstimate, EstimateError> {
    local_whittle_with_bandwidth(series, usize::MAX)
}

/// Minimises `R(H) = ln(mean_j lambda_j^(2H-1) I_j) - (2H-1) mean_j ln lambda_j`
/// over the first `m` Fourier frequencies, `m` capped at `(n - 1) / 2`. The
/// interval is `H +- 1.96 / (2 sqrt(m))`.
pub fn local_whittle_with_bandwidth(
    series: &[f64],
    m: usize,
) -> Result<HurstEstimate, EstimateError> {
    require_len(series, MIN_LEN)?;
    let x = centered(series)?;
    let n = x.len();
    let pg = raw_periodogram(&x);
    let m = m.clamp(2, (n - 1) / 2);
    let log_freq: Vec<f64> = (1..=m).map(|j| fourier_freq(j, n).ln()).collect();
    let pg = &pg[1..=m];
    let mean_log_freq = log_freq.iter().sum::<f64>() / m as f64;
    // Largest ln(lambda^(2H-1) I) is factored out to keep the sum in range.
    let objective = |h: f64| {
        let e = 2.0 * h - 1.0;
        let terms: Vec<f64> = log_freq
            .iter()
            .zip(pg)
            .map(|(&l, &i)| e * l + i.ln())
            .collect();
        let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let s = terms.iter().map(|t| (t - top).exp()).sum::<f64>() / m as f64;
        top + s.ln() - e * mean_log_freq
    };
    let h = brent_min(objective, H_LO, H_HI).ok_or(EstimateError::NoConvergence)?;
    let half = 1.96 / (2.0 * (m as f64).sqrt());
    Ok(HurstEstimate {
        method: Method::LocalWhittle,
        h,
        ci: Some((h - half, h + half)),
        fit: None,
        n_used: n,
    })
}

/// Brent's parabolic/golden-section minimiser on `[a, b]`.
fn brent_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> Option<f64> {
    let golden = 0.5 * (3.0 - 5f64.sqrt());
    let mut x = a + golden * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    for _ in 0..MAX_ITER {
        if !fx.is_finite() {
            return None;
        }
        let mid = 0.5 * (a + b);
        let tol1 = TOL * x.abs() + 1e-15;
        let tol2 = 2.0 * tol1;
        if (x - mid).abs() <= tol2 - 0.5 * (b - a) {
            return Some(x);
        }
        let mut golden_step = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < mid { tol1 } else { -tol1 };
                }
                golden_step = false;
            }
        }
        if golden_step {
            e = if x < mid { b - x } else { a - x };
            d = golden * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    None
}
