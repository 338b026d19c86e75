//! Low-frequency periodogram regression.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::{centered, require_len, EstimateError, HurstEstimate, Method, ScalingFit};

const MIN_LEN: usize = 1 << 10;
/// Share of the positive Fourier frequencies used in the fit.
const LOW_FRACTION: f64 = 0.1;

/// `I_j = |sum_t (x_t - xbar) e^{-i 2 pi j t / n}|^2 / n` for `j = 0..n`.
///
/// With this normalisation the mean of `I_j` over all `j` is the (biased)
/// sample variance.
pub fn periodogram(series: &[f64]) -> Result<Vec<f64>, EstimateError> {
    let x = centered(series)?;
    Ok(raw_periodogram(&x))
}

pub(crate) fn raw_periodogram(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf.iter().map(|c| c.norm_sqr() / n as f64).collect()
}

/// Angular Fourier frequency `2 pi j / n`.
pub(crate) fn fourier_freq(j: usize, n: usize) -> f64 {
    2.0 * std::f64::consts::PI * j as f64 / n as f64
}

/// Regresses `log I` on `log lambda` over the lowest tenth of the positive
/// Fourier frequencies; `H = (1 - slope) / 2`.
pub fn periodogram_estimate(series: &[f64]) -> Result<HurstEstimate, EstimateError> {
    require_len(series, MIN_LEN)?;
    let n = series.len();
    let pg = periodogram(series)?;
    let top = ((LOW_FRACTION * (n / 2) as f64) as usize).max(3);
    let mut xs = Vec::with_capacity(top);
    let mut ys = Vec::with_capacity(top);
    for (j, &v) in pg.iter().enumerate().take(top + 1).skip(1) {
        if v > 0.0 {
            xs.push(fourier_freq(j, n).log10());
            ys.push(v.log10());
        }
    }
    let fit = ScalingFit::ols(xs, ys)?;
    Ok(HurstEstimate {
        method: Method::Periodogram,
        h: (1.0 - fit.slope) / 2.0,
        ci: None,
        fit: Some(fit),
        n_used: n,
    })
}
