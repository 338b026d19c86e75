#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

/// The whole Markov model: equilibrium mass of state 0, tail exponent and
/// the seed of the random stream driving the chain.
///
/// Values of this type always satisfy `0 < alpha < 1`, `0 < pi0 < 1` and
/// `pi0 > validity_threshold(alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pi0: f64,
    alpha: f64,
    seed: u64,
}

impl ModelParams {
    pub fn new(pi0: f64, alpha: f64, seed: u64) -> Result<Self> {
        open_unit("pi0", pi0)?;
        open_unit("alpha", alpha)?;
        let threshold = validity_threshold(alpha);
        if pi0 <= threshold {
            return Err(Error::InvalidRegion {
                pi0,
                alpha,
                threshold,
            });
        }
        Ok(Self { pi0, alpha, seed })
    }

    /// Builds the model from the quantities a traffic modeller thinks in: the
    /// fraction of ones and the Hurst parameter.
    pub fn from_mean_hurst(mean: f64, hurst: f64, seed: u64) -> Result<Self> {
        open_unit("mean", mean)?;
        Self::new(1.0 - mean, hurst_to_alpha(hurst)?, seed)
    }

    pub fn pi0(&self) -> f64 {
        self.pi0
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn hurst(&self) -> f64 {
        1.0 - self.alpha / 2.0
    }

    /// Expected value of an emitted symbol.
    pub fn mean(&self) -> f64 {
        1.0 - self.pi0
    }

    /// `(1 - pi0) / pi0`, the common factor of every jump probability.
    pub fn odds(&self) -> f64 {
        (1.0 - self.pi0) / self.pi0
    }
}

/// Lower bound on `pi0`: `(2^a - 1) / (2^(a+1) - 1)`.
pub fn validity_threshold(alpha: f64) -> f64 {
    let t = alpha * core::f64::consts::LN_2;
    t.exp_m1() / (2.0 * t.exp() - 1.0)
}

pub fn hurst_to_alpha(hurst: f64) -> Result<f64> {
    if !(hurst > 0.5 && hurst < 1.0) {
        return Err(Error::OutOfRange {
            name: "hurst",
            value: hurst,
            low: 0.5,
            high: 1.0,
        });
    }
    Ok(2.0 * (1.0 - hurst))
}

pub fn alpha_to_hurst(alpha: f64) -> Result<f64> {
    open_unit("alpha", alpha)?;
    Ok(1.0 - alpha / 2.0)
}

fn open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            low: 0.0,
            high: 1.0,
        })
    }
}
