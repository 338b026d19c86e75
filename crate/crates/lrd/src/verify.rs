//! Self-checks of the chain: closed-form identities, sampler goodness of fit
//! and scaling exponents. Each check reports a measured value and whether it
//! met its bound.

use std::fmt;

use lrd_core::rng::stream_rng;
use lrd_core::{
    equilibrium_pi, equilibrium_tail, generate, jump_prob, jump_tail, step, ChainState,
    EquilibriumSampler, JumpSampler, ModelParams,
};
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::experiments::{
    acf_slope_check, count_variance_check, default_lags, exact_acf_slope, tail_check,
    tail_prefactor_ratio,
};

/// Relative tolerance of the closed-form identities.
pub const LAW_TOL: f64 = 1e-12;
/// Significance level of the goodness-of-fit tests.
pub const GOF_LEVEL: f64 = 1e-3;
/// Largest explicit bin of the goodness-of-fit tests; larger values share
/// one tail bin.
pub const GOF_BINS: u64 = 64;
/// Scaling exponents must land within this of their targets.
pub const SLOPE_TOL: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    /// Human-readable acceptance condition.
    pub bound: String,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, measured: f64, bound: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            measured,
            bound: bound.into(),
            pass,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}: {:.6e} ({})",
            self.name, self.measured, self.bound
        )
    }
}

/// Compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Closed-form identities for every `k <= k_max`:
/// `f_k >= 0`, `sum_{i<=K} f_i + jump_tail(K+1) = 1`,
/// `pi_k = pi_{k+1} + pi0 f_k`, and `sum_{i>=k} pi_i = (1 - pi0) k^-alpha`
/// (the last by summing `pi_i` down from `k_max` onto the closed-form tail).
/// Also the tail asymptote `(1 - F(n)) n^(1+alpha) -> alpha (1 - pi0)/pi0`
/// to within 1e-3 at `n = 10^6`.
pub fn law_checks(params: &ModelParams, k_max: u64) -> Vec<Check> {
    let (p0, a) = (params.pi0(), params.alpha());
    let f: Vec<f64> = (0..=k_max + 1).map(|k| jump_prob(k, params)).collect();
    let pi: Vec<f64> = (0..=k_max + 1).map(|k| equilibrium_pi(k, params)).collect();

    let min_f = f.iter().cloned().fold(f64::INFINITY, f64::min);

    let mut total = Neumaier::default();
    let mut worst_total = 0.0f64;
    for k in 0..=k_max {
        total.add(f[k as usize]);
        let err = (total.value() + jump_tail(k + 1, params) - 1.0).abs();
        worst_total = worst_total.max(err);
    }

    let worst_rec = (0..=k_max as usize)
        .map(|k| {
            let scale = if k == 0 { p0 } else { pi[k] };
            (pi[k] - pi[k + 1] - p0 * f[k]).abs() / scale
        })
        .fold(0.0f64, f64::max);

    let mut tail = Neumaier::default();
    tail.add(equilibrium_tail(k_max + 1, params));
    let mut worst_tail = 0.0f64;
    for k in (1..=k_max).rev() {
        tail.add(pi[k as usize]);
        let exact = (1.0 - p0) * (k as f64).powf(-a);
        worst_tail = worst_tail.max((tail.value() - exact).abs() / exact);
    }
    let mass = (p0 + equilibrium_tail(1, params) - 1.0).abs();
    let ratio = tail_prefactor_ratio(params, 1_000_000);

    let tol = format!("<= {LAW_TOL:e}");
    vec![
        Check::new("min f_k", min_f, ">= 0", min_f >= 0.0),
        Check::new(
            "sum f_k + tail = 1",
            worst_total,
            tol.clone(),
            worst_total <= LAW_TOL,
        ),
        Check::new(
            "pi_k = pi_(k+1) + pi0 f_k",
            worst_rec,
            tol.clone(),
            worst_rec <= LAW_TOL,
        ),
        Check::new(
            "sum_(i>=k) pi_i = (1-pi0) k^-alpha",
            worst_tail,
            tol.clone(),
            worst_tail <= LAW_TOL,
        ),
        Check::new("sum pi_k = 1", mass, tol, mass <= LAW_TOL),
        Check::new(
            "tail prefactor ratio at 1e6",
            ratio,
            "within 1e-3 of 1",
            (ratio - 1.0).abs() <= 1e-3,
        ),
    ]
}

/// Pearson statistic of `counts` against `probs` and its upper-tail p-value.
/// Bins are merged from the right until each expects at least 5.
pub fn chi_square(counts: &[u64], probs: &[f64]) -> (f64, f64, usize) {
    let n: u64 = counts.iter().sum();
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut pending = (0.0, 0.0);
    for (&c, &p) in counts.iter().zip(probs).rev() {
        pending = (pending.0 + c as f64, pending.1 + p * n as f64);
        if pending.1 >= 5.0 {
            bins.push(pending);
            pending = (0.0, 0.0);
        }
    }
    if let Some(last) = bins.last_mut() {
        last.0 += pending.0;
        last.1 += pending.1;
    }
    let stat: f64 = bins.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let df = bins.len().saturating_sub(1).max(1);
    let p = 1.0 - ChiSquared::new(df as f64).expect("df > 0").cdf(stat);
    (stat, p, df)
}

fn binned(values: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut counts = vec![0u64; GOF_BINS as usize + 2];
    for v in values {
        counts[v.min(GOF_BINS + 1) as usize] += 1;
    }
    counts
}

fn gof_check(name: &str, counts: &[u64], probs: &[f64]) -> Check {
    let (stat, p, df) = chi_square(counts, probs);
    Check::new(
        format!("{name} chi-square ({df} df, p = {p:.4})"),
        stat,
        format!("p >= {GOF_LEVEL}"),
        p >= GOF_LEVEL,
    )
}

/// Probabilities of the bins `0..=64` and `>= 65`.
fn bin_probs(point: impl Fn(u64) -> f64, tail: impl Fn(u64) -> f64) -> Vec<f64> {
    let mut p: Vec<f64> = (0..=GOF_BINS).map(point).collect();
    p.push(tail(GOF_BINS + 1));
    p
}

/// Empirical checks of the samplers with `draws` samples each:
/// jump law and initial law by chi-square, jump tail `P(jump >= k)` within
/// 4 standard errors for `k = 10 .. 10^4`, and the state occupancy at time
/// 1000 of independent chains started from equilibrium.
pub fn sampler_checks(params: &ModelParams, draws: u64, seed: u64) -> lrd_core::Result<Vec<Check>> {
    let mut out = Vec::new();
    let jumps = JumpSampler::new(params);
    let mut rng = stream_rng(seed, 0);
    let mut jump_draws = Vec::with_capacity(draws as usize);
    for _ in 0..draws {
        jump_draws.push(jumps.sample(&mut rng)?);
    }
    let probs = bin_probs(|k| jump_prob(k, params), |k| jump_tail(k, params));
    out.push(gof_check(
        "jump law",
        &binned(jump_draws.iter().copied()),
        &probs,
    ));

    let n = draws as f64;
    for k in [10u64, 100, 1_000, 10_000] {
        let hits = jump_draws.iter().filter(|&&j| j >= k).count() as f64;
        let p = jump_tail(k, params);
        let se = (p * (1.0 - p) / n).sqrt();
        let z = (hits / n - p) / se;
        out.push(Check::new(
            format!("P(jump >= {k}) z-score"),
            z,
            "|z| <= 4",
            z.abs() <= 4.0,
        ));
    }
    drop(jump_draws);

    let eq = EquilibriumSampler::new(params);
    let mut rng = stream_rng(seed, 1);
    let init: Vec<u64> = (0..draws)
        .map(|_| eq.sample(&mut rng))
        .collect::<lrd_core::Result<_>>()?;
    let probs = bin_probs(
        |k| equilibrium_pi(k, params),
        |k| equilibrium_tail(k, params),
    );
    out.push(gof_check("initial law", &binned(init.into_iter()), &probs));

    // Independent chains, each observed once after a burn of `horizon` steps.
    let horizon = 1_000u64;
    let chains = (draws / horizon).max(1);
    let finals: Vec<u64> = (0..chains)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, 2 + c);
            let mut state = ChainState::new(eq.sample(&mut rng)?);
            for _ in 0..horizon {
                state = step(state, &mut rng, &jumps)?;
            }
            Ok(state.get())
        })
        .collect::<lrd_core::Result<_>>()?;
    out.push(gof_check(
        &format!("occupancy after {horizon} steps"),
        &binned(finals.into_iter()),
        &probs,
    ));
    Ok(out)
}

/// Scaling exponents: analytic tail slope `-(1 + alpha)`, exact and sampled
/// autocorrelation slopes `-alpha` over lags 10..1000 (the sampled one from
/// an `n`-symbol series), and the `Var N_n` slope `2 - alpha` from 1000
/// replicas up to `n_var`.
pub fn scaling_checks(
    params: &ModelParams,
    n: usize,
    n_var: u64,
    seed: u64,
) -> Result<Vec<Check>, crate::experiments::ExperimentError> {
    let a = params.alpha();
    let mut out = Vec::new();
    let tail = tail_check(
        params,
        &[10_000, 100_000, 1_000_000, 10_000_000, 100_000_000],
    )?;
    out.push(slope_check("tail slope", tail.slope, -(1.0 + a), 0.01));

    let exact = exact_acf_slope(params, &default_lags())?;
    out.push(slope_check("exact acf slope", exact.slope, -a, SLOPE_TOL));

    let p = params.with_seed(seed);
    let series = generate(&p, n)?.to_reals();
    match acf_slope_check(&series, &default_lags()) {
        Ok(fit) => out.push(slope_check("acf slope", fit.slope, -a, SLOPE_TOL)),
        Err(e) => out.push(Check::new(
            format!("acf slope ({e})"),
            f64::NAN,
            "fit",
            false,
        )),
    }
    drop(series);

    let cv = count_variance_check(&p, n_var, 1000, seed)?;
    out.push(slope_check(
        "Var N_n slope",
        cv.fit.slope,
        2.0 - a,
        SLOPE_TOL,
    ));
    Ok(out)
}

fn slope_check(name: &str, measured: f64, target: f64, tol: f64) -> Check {
    Check::new(
        name,
        measured,
        format!("{target:.4} +- {tol}"),
        (measured - target).abs() <= tol,
    )
}
