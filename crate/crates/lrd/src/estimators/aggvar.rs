//! Aggregated variance.

use super::{
    centered, geometric_ladder, require_len, EstimateError, HurstEstimate, Method, ScalingFit,
};

const MIN_LEN: usize = 1 << 10;
const MIN_SCALE: usize = 10;

/// Regresses the variance of block means on block size over a `sqrt(2)`
/// ladder from 10 to `n/4`; `H = 1 + slope/2`.
///
/// When the block size does not divide the length, the blocks aligned to the
/// start and the blocks aligned to the end give different variances; the two
/// are averaged, which makes the estimate invariant under time reversal.
pub fn aggvar_estimate(series: &[f64]) -> Result<HurstEstimate, EstimateError> {
    aggvar_with_scales(series, MIN_SCALE, series.len() / 4)
}

/// Aggregated variance over block sizes `lo..=hi` on the `sqrt(2)` ladder.
pub fn aggvar_with_scales(
    series: &[f64],
    lo: usize,
    hi: usize,
) -> Result<HurstEstimate, EstimateError> {
    require_len(series, MIN_LEN)?;
    let x = centered(series)?;
    let n = x.len();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for m in geometric_ladder(lo.max(1), hi.min(n / 2), std::f64::consts::SQRT_2) {
        let head = block_mean_variance(&x[..n - n % m], m);
        let tail = block_mean_variance(&x[n % m..], m);
        let v = 0.5 * (head + tail);
        if v > 0.0 {
            xs.push((m as f64).log10());
            ys.push(v.log10());
        }
    }
    let fit = ScalingFit::ols(xs, ys)?;
    Ok(HurstEstimate {
        method: Method::AggVar,
        h: 1.0 + fit.slope / 2.0,
        ci: None,
        fit: Some(fit),
        n_used: n,
    })
}

/// Sample variance of the means of consecutive blocks of `m`.
fn block_mean_variance(x: &[f64], m: usize) -> f64 {
    let means: Vec<f64> = x
        .chunks_exact(m)
        .map(|c| c.iter().sum::<f64>() / m as f64)
        .collect();
    let k = means.len() as f64;
    let mu = means.iter().sum::<f64>() / k;
    means.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / (k - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::testdata::gaussian;

    #[test]
    fn iid_slope_minus_one() {
        let x = gaussian(1 << 20, 3);
        let est = aggvar_estimate(&x).unwrap();
        assert!((est.fit.as_ref().unwrap().slope + 1.0).abs() < 0.1);
        assert!((est.h - 0.5).abs() < 0.05, "{}", est.h);
    }

    #[test]
    fn reversal_invariant() {
        let x = gaussian(5000, 4);
        let mut r = x.clone();
        r.reverse();
        let a = aggvar_estimate(&x).unwrap().h;
        let b = aggvar_estimate(&r).unwrap().h;
        assert!((a - b).abs() < 1e-9);
    }
}
