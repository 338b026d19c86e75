//! Sample autocorrelation.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::{centered, EstimateError};

/// `rho(0..=max_lag)` of the series, using the biased autocovariance
/// `(1/n) sum_t (x_t - xbar)(x_{t+k} - xbar)` so every value lies in `[-1, 1]`.
pub fn acf(series: &[f64], max_lag: usize) -> Result<Vec<f64>, EstimateError> {
    let n = series.len();
    if max_lag == 0 || max_lag >= n {
        return Err(EstimateError::BadLag { max_lag, len: n });
    }
    let x = centered(series)?;
    let size = (n + max_lag).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = x
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(size)
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(size).process(&mut buf);
    for c in &mut buf {
        *c = Complex::new(c.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(size).process(&mut buf);
    let c0 = buf[0].re;
    Ok(buf[..=max_lag]
        .iter()
        .map(|c| (c.re / c0).clamp(-1.0, 1.0))
        .collect())
}

/// `rho(k)` for the given lags by direct summation. Cheaper than [`acf`] for
/// a handful of sparse lags on a long series.
pub fn acf_at_lags(series: &[f64], lags: &[usize]) -> Result<Vec<f64>, EstimateError> {
    let n = series.len();
    if let Some(&bad) = lags.iter().find(|&&k| k >= n) {
        return Err(EstimateError::BadLag {
            max_lag: bad,
            len: n,
        });
    }
    let x = centered(series)?;
    let c0: f64 = x.iter().map(|v| v * v).sum();
    Ok(lags
        .iter()
        .map(|&k| {
            let ck: f64 = x[..n - k].iter().zip(&x[k..]).map(|(a, b)| a * b).sum();
            (ck / c0).clamp(-1.0, 1.0)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::testdata::gaussian;

    #[test]
    fn fft_matches_direct() {
        let x = gaussian(3001, 5);
        let fast = acf(&x, 40).unwrap();
        let lags: Vec<usize> = (0..=40).collect();
        let slow = acf_at_lags(&x, &lags).unwrap();
        assert_eq!(fast[0], 1.0);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn alternating_series() {
        let x: Vec<f64> = (0..1000).map(|i| (i % 2) as f64).collect();
        let r = acf(&x, 2).unwrap();
        assert!((r[1] + 0.999).abs() < 1e-9);
        assert!((r[2] - 0.998).abs() < 1e-9);
    }

    #[test]
    fn errors() {
        let x = gaussian(10, 1);
        assert_eq!(
            acf(&x, 0),
            Err(EstimateError::BadLag {
                max_lag: 0,
                len: 10
            })
        );
        assert!(acf(&x, 10).is_err());
        assert_eq!(acf(&[1.0; 10], 3), Err(EstimateError::ConstantSeries));
    }
}
