//! Wavelet (logscale diagram) estimator with Daubechies-4 filters.

use super::{centered, require_len, EstimateError, HurstEstimate, Method, ScalingFit};

const MIN_LEN: usize = 1 << 12;
const FIRST_OCTAVE: usize = 1;
/// The last octave used is `floor(log2 n) - LAST_OCTAVE_GAP`.
const LAST_OCTAVE_GAP: usize = 4;

fn lowpass() -> [f64; 4] {
    let s3 = 3f64.sqrt();
    let c = 1.0 / (4.0 * std::f64::consts::SQRT_2);
    [
        (1.0 + s3) * c,
        (3.0 + s3) * c,
        (3.0 - s3) * c,
        (1.0 - s3) * c,
    ]
}

/// Weighted regression of `log2 mu_j` on octave `j`, where `mu_j` is the
/// mean squared detail coefficient, over octaves 1 to `floor(log2 n) - 4`;
/// `H = (slope + 1) / 2`.
///
/// The transform runs without periodic wrap-around, so each octave only
/// keeps coefficients whose support lies inside the series. Energies of the
/// series and of its time reversal are averaged, since the D4 wavelet is not
/// symmetric. Weights are the inverse of the Gaussian approximation
/// `Var(log2 mu_j) = 2 / (n_j ln^2 2)`.
pub fn wavelet_estimate(series: &[f64]) -> Result<HurstEstimate, EstimateError> {
    require_len(series, MIN_LEN)?;
    let last = series.len().ilog2() as usize - LAST_OCTAVE_GAP;
    wavelet_with_octaves(series, FIRST_OCTAVE, last)
}

/// Same estimator over octaves `first..=last` (octave 1 is the finest).
pub fn wavelet_with_octaves(
    series: &[f64],
    first: usize,
    last: usize,
) -> Result<HurstEstimate, EstimateError> {
    require_len(series, MIN_LEN)?;
    let mut x = centered(series)?;
    let n = x.len();
    let first = first.max(1);
    let forward = octave_energies(&x, last);
    x.reverse();
    let backward = octave_energies(&x, last);

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut ws = Vec::new();
    for j in first..=last {
        let (count, ef) = forward[j - 1];
        let (_, eb) = backward[j - 1];
        let mu = 0.5 * (ef + eb);
        if count == 0 || mu <= 0.0 {
            continue;
        }
        xs.push(j as f64);
        ys.push(mu.log2());
        let ln2 = std::f64::consts::LN_2;
        ws.push(count as f64 * ln2 * ln2 / 2.0);
    }
    let (fit, slope_var) = ScalingFit::weighted(xs, ys, &ws)?;
    let h = (fit.slope + 1.0) / 2.0;
    let half = 1.96 * slope_var.sqrt() / 2.0;
    Ok(HurstEstimate {
        method: Method::Wavelet,
        h,
        ci: Some((h - half, h + half)),
        fit: Some(fit),
        n_used: n,
    })
}

/// `(n_j, mu_j)` for octaves `1..=last`.
fn octave_energies(x: &[f64], last: usize) -> Vec<(usize, f64)> {
    let h = lowpass();
    let g = [h[3], -h[2], h[1], -h[0]];
    let mut approx = x.to_vec();
    let mut out = Vec::with_capacity(last);
    for _ in 0..last {
        if approx.len() < 4 {
            out.push((0, 0.0));
            continue;
        }
        let k_max = (approx.len() - 4) / 2 + 1;
        let mut next = Vec::with_capacity(k_max);
        let mut energy = 0.0;
        for k in 0..k_max {
            let w = &approx[2 * k..2 * k + 4];
            let (mut a, mut d) = (0.0, 0.0);
            for i in 0..4 {
                a += h[i] * w[i];
                d += g[i] * w[i];
            }
            next.push(a);
            energy += d * d;
        }
        out.push((k_max, energy / k_max as f64));
        approx = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::testdata::gaussian;

    #[test]
    fn filters_orthonormal() {
        let h = lowpass();
        let norm: f64 = h.iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-15);
        assert!((h.iter().sum::<f64>() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((h[0] * h[2] + h[1] * h[3]).abs() < 1e-16);
    }

    #[test]
    fn kills_linear_trend() {
        let x: Vec<f64> = (0..64).map(|i| 3.0 * i as f64 - 7.0).collect();
        let e = octave_energies(&x, 2);
        assert!(e[0].1 < 1e-20 && e[1].1 < 1e-20);
    }

    #[test]
    fn iid_near_half() {
        let x = gaussian(1 << 18, 13);
        let est = wavelet_estimate(&x).unwrap();
        assert!((est.h - 0.5).abs() < 0.03, "{}", est.h);
        let (lo, hi) = est.ci.unwrap();
        assert!(lo <= est.h && est.h <= hi);
    }
}
