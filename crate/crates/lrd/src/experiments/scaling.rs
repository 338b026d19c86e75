use lrd_core::rng::{stream_rng, StreamRng};
use lrd_core::{jump_prob, jump_tail, JumpSampler, ModelParams};
use rayon::prelude::*;

use super::ExperimentError;
use crate::estimators::{acf_at_lags, geometric_ladder, ScalingFit};

const MIN_REPLICAS: usize = 100;
/// Count checkpoints per decade in [`count_variance_check`].
const CHECKPOINTS_PER_DECADE: f64 = 8.0;
/// Smallest `n` in the count-variance fit.
const VARIANCE_FIT_FROM: u64 = 100;

/// Log-log fit of the analytic recurrence-time tail `1 - F(n) = jump_tail(n)`
/// over `ns`. The slope approaches `-(1 + alpha)`.
pub fn tail_check(params: &ModelParams, ns: &[u64]) -> Result<ScalingFit, ExperimentError> {
    if ns.first().is_none_or(|&n| n == 0) || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::BadScales);
    }
    let xs = ns.iter().map(|&n| (n as f64).log10()).collect();
    let ys = ns.iter().map(|&n| jump_tail(n, params).log10()).collect();
    Ok(ScalingFit::ols(xs, ys)?)
}

/// `(1 - F(n)) n^(1+alpha) / (alpha (1 - pi0) / pi0)`, which tends to 1.
pub fn tail_prefactor_ratio(params: &ModelParams, n: u64) -> f64 {
    let a = params.alpha();
    let nf = n as f64;
    jump_tail(n, params) * nf.powf(1.0 + a) / (a * params.odds())
}

/// `2 alpha pi0^2 (1 - pi0) / ((1 - alpha)(2 - alpha))`, the constant in
/// `Var N_n ~ C n^(2 - alpha)`.
pub fn expected_variance_prefactor(params: &ModelParams) -> f64 {
    let (p, a) = (params.pi0(), params.alpha());
    2.0 * a * p * p * (1.0 - p) / ((1.0 - a) * (2.0 - a))
}

/// Monte Carlo variance of the number of visits to state 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CountVariance {
    pub ns: Vec<u64>,
    pub means: Vec<f64>,
    pub variances: Vec<f64>,
    /// `log10 Var N_n` against `log10 n` for `n >= 100`.
    pub fit: ScalingFit,
}

impl CountVariance {
    /// `Var N_n / n^exponent` at the largest `n`.
    pub fn prefactor(&self, exponent: f64) -> f64 {
        let last = self.ns.len() - 1;
        self.variances[last] / (self.ns[last] as f64).powf(exponent)
    }
}

/// Runs `replicas` chains from state 0 up to time `n_max` and records
/// `N_n`, the number of `1 <= i <= n` with `X_i = 0`, on a log ladder of `n`.
/// Replica `r` draws from substream `r` of `seed`.
pub fn count_variance_check(
    params: &ModelParams,
    n_max: u64,
    replicas: usize,
    seed: u64,
) -> Result<CountVariance, ExperimentError> {
    let sampler = JumpSampler::new(params);
    count_variance_of(|rng| sampler.sample(rng), n_max, replicas, seed)
}

/// [`count_variance_check`] for any renewal chain, given its jump sampler
/// (the return time to 0 is the jump plus one).
pub fn count_variance_of<F>(
    jump: F,
    n_max: u64,
    replicas: usize,
    seed: u64,
) -> Result<CountVariance, ExperimentError>
where
    F: Fn(&mut StreamRng) -> lrd_core::Result<u64> + Sync,
{
    if replicas < MIN_REPLICAS {
        return Err(ExperimentError::TooFewReplicas {
            needed: MIN_REPLICAS,
            got: replicas,
        });
    }
    let ns = checkpoints(n_max);
    if ns.len() < 3 {
        return Err(ExperimentError::BadScales);
    }
    let counts: Vec<Vec<u64>> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| visit_counts(&jump, &ns, &mut stream_rng(seed, r)))
        .collect::<Result<_, _>>()?;
    let reps = replicas as f64;
    let mut means = Vec::with_capacity(ns.len());
    let mut variances = Vec::with_capacity(ns.len());
    for i in 0..ns.len() {
        let mean = counts.iter().map(|c| c[i] as f64).sum::<f64>() / reps;
        let var = counts
            .iter()
            .map(|c| (c[i] as f64 - mean).powi(2))
            .sum::<f64>()
            / (reps - 1.0);
        means.push(mean);
        variances.push(var);
    }
    let (xs, ys) = ns
        .iter()
        .zip(&variances)
        .filter(|(&n, _)| n >= VARIANCE_FIT_FROM.min(ns[ns.len() - 3]))
        .map(|(&n, &v)| ((n as f64).log10(), v.log10()))
        .unzip();
    let fit = ScalingFit::ols(xs, ys)?;
    Ok(CountVariance {
        ns,
        means,
        variances,
        fit,
    })
}

fn checkpoints(n_max: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let mut i = 0.0;
    loop {
        let n = (10f64.powf(1.0 + i / CHECKPOINTS_PER_DECADE)).round() as u64;
        if n > n_max {
            break;
        }
        if out.last() != Some(&n) {
            out.push(n);
        }
        i += 1.0;
    }
    if out.last() != Some(&n_max) && n_max >= 10 {
        out.push(n_max);
    }
    out
}

fn visit_counts<F>(jump: &F, ns: &[u64], rng: &mut StreamRng) -> lrd_core::Result<Vec<u64>>
where
    F: Fn(&mut StreamRng) -> lrd_core::Result<u64>,
{
    let mut counts = Vec::with_capacity(ns.len());
    let mut t = 0u64;
    let mut visits = 0u64;
    while counts.len() < ns.len() {
        let next = t.saturating_add(jump(rng)?).saturating_add(1);
        while counts.len() < ns.len() && ns[counts.len()] < next {
            counts.push(visits);
        }
        visits += 1;
        t = next;
    }
    Ok(counts)
}

/// Fits `log10 rho(k)` against `log10 k` over `lags`. For LRD with tail
/// exponent alpha the slope is near `-alpha`. Any lag whose sample
/// autocorrelation is not positive makes the fit meaningless and is
/// reported as an error.
pub fn acf_slope_check(series: &[f64], lags: &[usize]) -> Result<ScalingFit, ExperimentError> {
    if lags.first().is_none_or(|&k| k == 0) || lags.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::BadScales);
    }
    let rho = acf_at_lags(series, lags)?;
    let bad: Vec<usize> = lags
        .iter()
        .zip(&rho)
        .filter(|(_, &r)| r <= 0.0)
        .map(|(&k, _)| k)
        .collect();
    if !bad.is_empty() {
        return Err(ExperimentError::NegativeAcf { lags: bad });
    }
    let xs = lags.iter().map(|&k| (k as f64).log10()).collect();
    let ys = rho.iter().map(|r| r.log10()).collect();
    Ok(ScalingFit::ols(xs, ys)?)
}

/// Exact autocorrelation `rho(0..=max_lag)` of the stationary symbol series.
///
/// With `u_k = P(X_k = 0 | X_0 = 0)`, which obeys the renewal recursion
/// `u_k = sum_{j=1..k} f_(j-1) u_(k-j)`, the symbol covariance is
/// `pi0 (u_k - pi0)`, so `rho(k) = (u_k - pi0) / (1 - pi0)`. Quadratic in
/// `max_lag`.
pub fn chain_acf(params: &ModelParams, max_lag: usize) -> Vec<f64> {
    let p0 = params.pi0();
    let f: Vec<f64> = (0..max_lag as u64).map(|k| jump_prob(k, params)).collect();
    let mut u = Vec::with_capacity(max_lag + 1);
    u.push(1.0);
    for k in 1..=max_lag {
        let uk = (1..=k).map(|j| f[j - 1] * u[k - j]).sum();
        u.push(uk);
    }
    u.iter().map(|uk| (uk - p0) / (1.0 - p0)).collect()
}

/// Log-log fit of the exact [`chain_acf`] over `lags`.
pub fn exact_acf_slope(
    params: &ModelParams,
    lags: &[usize],
) -> Result<ScalingFit, ExperimentError> {
    let max = *lags.last().ok_or(ExperimentError::BadScales)?;
    let rho = chain_acf(params, max);
    let xs = lags.iter().map(|&k| (k as f64).log10()).collect();
    let ys = lags.iter().map(|&k| rho[k].log10()).collect();
    Ok(ScalingFit::ols(xs, ys)?)
}

/// Lags 10 to 1000 on a `10^(1/8)` ladder.
pub fn default_lags() -> Vec<usize> {
    geometric_ladder(10, 1000, 10f64.powf(0.125))
}
