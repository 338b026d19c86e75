//! Exact sampling from heavy-tailed laws on the non-negative integers.
//!
//! States below [`EXPLICIT_CUTOFF`] are found by an explicit inverse CDF
//! against a precomputed survival table. Larger states are located by
//! testing doubling windows `[N, 2N-1]`, `[2N, 4N-1]`, ... with the exact
//! conditional probability of each window given that the state is at least
//! the window start, then bisecting the accepted window. Every test consumes
//! a fresh uniform, and every probability is a ratio of closed-form tail
//! masses, so precision does not degrade as the state grows.

use rand_core::RngCore;

use crate::chain::ChainState;
use crate::error::{Error, Result};
use crate::law::{self, pow_neg, power_diff, unit_gap, window_gap};
use crate::params::ModelParams;
use crate::rng::uniform;

/// Number of states handled by the explicit inverse CDF.
pub const EXPLICIT_CUTOFF: u64 = 16;

const TABLE_LEN: usize = EXPLICIT_CUTOFF as usize + 1;
const LARGEST_WINDOW_START: u64 = 1 << 62;

/// Tail masses of a law, up to a positive factor common to both methods.
trait TailLaw {
    /// Mass of `[lo, hi]`.
    fn window(&self, lo: u64, hi: u64) -> f64;
    /// Mass of `[k, inf)`.
    fn tail(&self, k: u64) -> f64;
}

#[derive(Debug, Clone, Copy)]
struct JumpLaw {
    alpha: f64,
}

impl TailLaw for JumpLaw {
    fn window(&self, lo: u64, hi: u64) -> f64 {
        window_gap(lo, hi, self.alpha)
    }

    fn tail(&self, k: u64) -> f64 {
        unit_gap(k as f64, self.alpha)
    }
}

#[derive(Debug, Clone, Copy)]
struct EquilibriumLaw {
    alpha: f64,
}

impl TailLaw for EquilibriumLaw {
    fn window(&self, lo: u64, hi: u64) -> f64 {
        power_diff(lo as f64, hi as f64 + 1.0, self.alpha)
    }

    fn tail(&self, k: u64) -> f64 {
        pow_neg(k as f64, self.alpha)
    }
}

#[derive(Debug, Clone)]
struct Windowed<L> {
    /// `survival[k] = P(X >= k)` for `k <= EXPLICIT_CUTOFF`.
    survival: [f64; TABLE_LEN],
    law: L,
}

impl<L: TailLaw> Windowed<L> {
    fn new(law: L, survival: impl Fn(u64) -> f64) -> Self {
        Self {
            survival: core::array::from_fn(|k| survival(k as u64)),
            law,
        }
    }

    #[inline]
    fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        let u = uniform(rng);
        for k in 0..EXPLICIT_CUTOFF {
            if u >= self.survival[k as usize + 1] {
                return Ok(k);
            }
        }
        self.sample_tail(rng)
    }

    #[cold]
    fn sample_tail<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        let mut lo = EXPLICIT_CUTOFF;
        let mut hi = loop {
            let hi = 2 * lo - 1;
            let p = self.law.window(lo, hi) / self.law.tail(lo);
            if uniform(rng) < p {
                break hi;
            }
            if lo >= LARGEST_WINDOW_START {
                return Err(Error::StateOverflow);
            }
            lo *= 2;
        };
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let p = self.law.window(lo, mid) / self.law.window(lo, hi);
            if uniform(rng) < p {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }
}

/// Draws the state the chain jumps to when it leaves state 0.
#[derive(Debug, Clone)]
pub struct JumpSampler {
    inner: Windowed<JumpLaw>,
}

impl JumpSampler {
    pub fn new(params: &ModelParams) -> Self {
        let law = JumpLaw {
            alpha: params.alpha(),
        };
        Self {
            inner: Windowed::new(law, |k| law::jump_tail(k, params)),
        }
    }

    #[inline]
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        self.inner.sample(rng)
    }
}

/// Draws a state from the equilibrium distribution `pi_k`.
#[derive(Debug, Clone)]
pub struct EquilibriumSampler {
    inner: Windowed<EquilibriumLaw>,
}

impl EquilibriumSampler {
    pub fn new(params: &ModelParams) -> Self {
        let law = EquilibriumLaw {
            alpha: params.alpha(),
        };
        Self {
            inner: Windowed::new(law, |k| law::equilibrium_tail(k, params)),
        }
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        self.inner.sample(rng)
    }
}

/// One jump out of state 0. Builds the survival table on every call; hold a
/// [`JumpSampler`] when drawing repeatedly.
pub fn sample_jump<R: RngCore + ?Sized>(rng: &mut R, params: &ModelParams) -> Result<ChainState> {
    JumpSampler::new(params).sample(rng).map(ChainState::new)
}

/// A starting state drawn from equilibrium, so the chain is stationary from
/// its first step.
pub fn sample_initial<R: RngCore + ?Sized>(
    rng: &mut R,
    params: &ModelParams,
) -> Result<ChainState> {
    EquilibriumSampler::new(params)
        .sample(rng)
        .map(ChainState::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    /// Replays a fixed list of uniforms.
    struct Scripted<'a> {
        values: &'a [f64],
        at: usize,
    }

    impl RngCore for Scripted<'_> {
        fn next_u32(&mut self) -> u32 {
            unreachable!()
        }

        fn next_u64(&mut self) -> u64 {
            let u = self.values[self.at];
            self.at += 1;
            ((u * (1u64 << 53) as f64) as u64) << 11
        }

        fn fill_bytes(&mut self, _: &mut [u8]) {
            unreachable!()
        }
    }

    #[test]
    fn explicit_region_follows_inverse_cdf() {
        let p = ModelParams::new(0.5, 0.5, 0).unwrap();
        let s = JumpSampler::new(&p);
        let f0 = law::jump_prob(0, &p);
        let mut rng = Scripted {
            values: &[1.0 - f0 + 1e-9, 1.0 - f0 - 1e-9],
            at: 0,
        };
        assert_eq!(s.sample(&mut rng).unwrap(), 0);
        assert_eq!(s.sample(&mut rng).unwrap(), 1);
    }

    #[test]
    fn tail_path_walks_windows_then_bisects() {
        let p = ModelParams::new(0.5, 0.5, 0).unwrap();
        let s = JumpSampler::new(&p);
        // first uniform lands beyond the explicit table, second accepts [16, 31],
        // then always take the left half: [16, 23] -> [16, 19] -> [16, 17] -> 16
        let mut rng = Scripted {
            values: &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            at: 0,
        };
        assert_eq!(s.sample(&mut rng).unwrap(), 16);
        assert_eq!(rng.at, 6);
        // reject [16, 31], accept [32, 63], then always go right -> 63
        let big = 1.0 - 1e-15;
        let mut rng = Scripted {
            values: &[0.0, big, 0.0, big, big, big, big, big],
            at: 0,
        };
        assert_eq!(s.sample(&mut rng).unwrap(), 63);
        assert_eq!(rng.at, 8);
    }

    #[test]
    fn overflow_is_reported() {
        let p = ModelParams::new(0.5, 0.5, 0).unwrap();
        let s = JumpSampler::new(&p);
        // land in the tail, then reject every doubling window
        let mut script = [0.999_999_999_999; 70];
        script[0] = 0.0;
        let mut rng = Scripted {
            values: &script,
            at: 0,
        };
        assert_eq!(s.sample(&mut rng), Err(Error::StateOverflow));
    }

    #[test]
    fn initial_state_mass_at_zero() {
        let p = ModelParams::new(0.99, 0.5, 0).unwrap();
        let s = EquilibriumSampler::new(&p);
        let mut rng = stream_rng(3, 0);
        let n = 200_000;
        let zeros = (0..n).filter(|_| s.sample(&mut rng).unwrap() == 0).count();
        let se = (0.99 * 0.01 / n as f64).sqrt();
        assert!((zeros as f64 / n as f64 - 0.99).abs() < 4.0 * se);
    }
}
