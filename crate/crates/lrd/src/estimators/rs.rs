//! Rescaled adjusted range.

use super::{
    centered, geometric_ladder, require_len, EstimateError, HurstEstimate, Method, ScalingFit,
};

const MIN_LEN: usize = 1 << 9;
const MIN_SCALE: usize = 10;
/// Share of the log-scale range dropped at each end by the modified variant.
const TRIM: f64 = 0.15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsVariant {
    /// Fit over every scale on the ladder.
    Classic,
    /// Fit over the middle of the log-scale range only.
    Modified,
}

/// Averages `R/S` over the disjoint windows of each scale on a `sqrt(2)`
/// ladder from 10 to `n/4` and regresses `log R/S` on `log n`.
pub fn rs_estimate(series: &[f64], variant: RsVariant) -> Result<HurstEstimate, EstimateError> {
    require_len(series, MIN_LEN)?;
    let x = centered(series)?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for s in geometric_ladder(MIN_SCALE, x.len() / 4, std::f64::consts::SQRT_2) {
        if let Some(rs) = mean_rescaled_range(&x, s) {
            xs.push((s as f64).log10());
            ys.push(rs.log10());
        }
    }
    if variant == RsVariant::Modified && xs.len() >= 3 {
        let (lo, hi) = (xs[0], xs[xs.len() - 1]);
        let (keep_lo, keep_hi) = (lo + TRIM * (hi - lo), hi - TRIM * (hi - lo));
        let keep: Vec<bool> = xs.iter().map(|&v| v >= keep_lo && v <= keep_hi).collect();
        xs = filter(&xs, &keep);
        ys = filter(&ys, &keep);
    }
    let fit = ScalingFit::ols(xs, ys)?;
    Ok(HurstEstimate {
        method: match variant {
            RsVariant::Classic => Method::Rs,
            RsVariant::Modified => Method::RsModified,
        },
        h: fit.slope,
        ci: None,
        fit: Some(fit),
        n_used: series.len(),
    })
}

fn filter(v: &[f64], keep: &[bool]) -> Vec<f64> {
    v.iter()
        .zip(keep)
        .filter(|(_, &k)| k)
        .map(|(&x, _)| x)
        .collect()
}

fn mean_rescaled_range(x: &[f64], scale: usize) -> Option<f64> {
    let mut total = 0.0;
    let mut count = 0usize;
    for w in x.chunks_exact(scale) {
        let mean = w.iter().sum::<f64>() / scale as f64;
        let (mut cum, mut lo, mut hi, mut ss) = (0.0f64, 0.0f64, 0.0f64, 0.0);
        for v in w {
            let d = v - mean;
            cum += d;
            lo = lo.min(cum);
            hi = hi.max(cum);
            ss += d * d;
        }
        let sd = (ss / scale as f64).sqrt();
        if sd > 0.0 {
            total += (hi - lo) / sd;
            count += 1;
        }
    }
    (count > 0).then(|| total / count as f64)
}
