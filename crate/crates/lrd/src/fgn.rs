//! Fractional Gaussian noise by circulant embedding.

use lrd_core::rng::{stream_rng, StreamRng};
use lrd_core::{Generator, RealSeries};
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use thiserror::Error;

/// Most negative circulant eigenvalue accepted (and then set to zero).
const EIGEN_TOL: f64 = -1e-10;
/// Lags from here on use the binomial series for the autocovariance.
const SERIES_FROM: f64 = 32.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FgnError {
    #[error("hurst must lie in (0, 1), got {0}")]
    OutOfRange(f64),
    #[error("need at least 2 samples, got {0}")]
    TooShort(usize),
    #[error("circulant embedding is not positive semi-definite (eigenvalue {0:e})")]
    EmbeddingNotPsd(f64),
}

/// `gamma(k) = (|k+1|^2H - 2|k|^2H + |k-1|^2H) / 2`, unit variance at lag 0.
pub fn fgn_autocovariance(k: u64, hurst: f64) -> f64 {
    let e = 2.0 * hurst;
    if k == 0 {
        return 1.0;
    }
    let k = k as f64;
    if k < SERIES_FROM {
        return 0.5 * ((k + 1.0).powf(e) - 2.0 * k.powf(e) + (k - 1.0).powf(e));
    }
    // k^2H * sum_{n even >= 2} C(2H, n) k^-n
    let x2 = (k * k).recip();
    let mut coef = e * (e - 1.0) / 2.0;
    let mut pow = x2;
    let mut sum = 0.0;
    let mut n = 2.0;
    while n < 60.0 {
        let term = coef * pow;
        sum += term;
        if term.abs() <= sum.abs() * 1e-17 {
            break;
        }
        coef *= (e - n) * (e - n - 1.0) / ((n + 1.0) * (n + 2.0));
        pow *= x2;
        n += 2.0;
    }
    k.powf(e) * sum
}

/// `n` samples of unit-variance FGN driven by substream 0 of `seed`.
pub fn fgn_generate(hurst: f64, n: usize, seed: u64) -> Result<RealSeries, FgnError> {
    fgn_generate_with(hurst, n, &mut stream_rng(seed, 0))
}

pub fn fgn_generate_with(
    hurst: f64,
    n: usize,
    rng: &mut StreamRng,
) -> Result<RealSeries, FgnError> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(FgnError::OutOfRange(hurst));
    }
    if n < 2 {
        return Err(FgnError::TooShort(n));
    }
    let half = (n - 1).next_power_of_two();
    let size = 2 * half;
    let mut buf: Vec<Complex<f64>> = (0..size)
        .map(|i| {
            let lag = if i <= half { i } else { size - i };
            Complex::new(fgn_autocovariance(lag as u64, hurst), 0.0)
        })
        .collect();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(size);
    fft.process(&mut buf);
    let min = buf.iter().map(|c| c.re).fold(f64::INFINITY, f64::min);
    if min < EIGEN_TOL {
        return Err(FgnError::EmbeddingNotPsd(min));
    }
    for c in &mut buf {
        let scale = (c.re.max(0.0) / size as f64).sqrt();
        let a: f64 = StandardNormal.sample(rng);
        let b: f64 = StandardNormal.sample(rng);
        *c = Complex::new(scale * a, scale * b);
    }
    fft.process(&mut buf);
    let values = buf[..n].iter().map(|c| c.re).collect();
    Ok(RealSeries::new(values, Generator::Fgn).expect("finite by construction"))
}
