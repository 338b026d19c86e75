//! Hurst parameter estimators.
//!
//! Every estimator takes a plain slice of reals; binary series are passed as
//! 0.0/1.0 values, usually after [`aggregate`]. All of them centre the input
//! first and work on scale-free quantities, so `a * x + b` (with `a > 0`)
//! gives the same estimate as `x`.

mod acf;
mod aggvar;
mod periodogram;
mod regression;
mod rs;
mod wavelet;
mod whittle;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use acf::{acf, acf_at_lags};
pub use aggvar::{aggvar_estimate, aggvar_with_scales};
pub use periodogram::{periodogram, periodogram_estimate};
pub use regression::{geometric_ladder, ScalingFit};
pub use rs::{rs_estimate, RsVariant};
pub use wavelet::{wavelet_estimate, wavelet_with_octaves};
pub use whittle::{local_whittle_estimate, local_whittle_with_bandwidth};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EstimateError {
    #[error("series too short: need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("series is constant")]
    ConstantSeries,
    #[error("minimisation did not converge")]
    NoConvergence,
    #[error("only {got} usable scales, need at least 3")]
    TooFewScales { got: usize },
    #[error("degenerate regression input")]
    DegenerateFit,
    #[error("max lag {max_lag} must be in 1..{len}")]
    BadLag { max_lag: usize, len: usize },
    #[error("block size {block} does not fit a series of length {len}")]
    BadBlock { block: usize, len: usize },
}

impl EstimateError {
    /// Short tag used in tables and CLI reports.
    pub fn tag(&self) -> &'static str {
        match self {
            EstimateError::TooShort { .. } => "TooShort",
            EstimateError::ConstantSeries => "ConstantSeries",
            EstimateError::NoConvergence => "NoConvergence",
            EstimateError::TooFewScales { .. } => "TooFewScales",
            EstimateError::DegenerateFit => "DegenerateFit",
            EstimateError::BadLag { .. } => "BadLag",
            EstimateError::BadBlock { .. } => "BadBlock",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Rs,
    RsModified,
    AggVar,
    Periodogram,
    LocalWhittle,
    Wavelet,
}

impl Method {
    /// In the column order of the comparison table.
    pub const ALL: [Method; 6] = [
        Method::Rs,
        Method::RsModified,
        Method::AggVar,
        Method::Periodogram,
        Method::LocalWhittle,
        Method::Wavelet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Rs => "rs",
            Method::RsModified => "rs_modified",
            Method::AggVar => "aggvar",
            Method::Periodogram => "periodogram",
            Method::LocalWhittle => "local_whittle",
            Method::Wavelet => "wavelet",
        }
    }

    pub fn estimate(self, series: &[f64]) -> Result<HurstEstimate, EstimateError> {
        match self {
            Method::Rs => rs_estimate(series, RsVariant::Classic),
            Method::RsModified => rs_estimate(series, RsVariant::Modified),
            Method::AggVar => aggvar_estimate(series),
            Method::Periodogram => periodogram_estimate(series),
            Method::LocalWhittle => local_whittle_estimate(series),
            Method::Wavelet => wavelet_estimate(series),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HurstEstimate {
    pub method: Method,
    pub h: f64,
    /// 95% interval, for the methods that have one.
    pub ci: Option<(f64, f64)>,
    pub fit: Option<ScalingFit>,
    pub n_used: usize,
}

impl HurstEstimate {
    pub fn r2(&self) -> Option<f64> {
        self.fit.as_ref().map(|f| f.r2)
    }
}

/// Non-overlapping block sums; a trailing partial block is dropped.
pub fn aggregate(series: &[f64], block: usize) -> Result<Vec<f64>, EstimateError> {
    if block == 0 || block > series.len() {
        return Err(EstimateError::BadBlock {
            block,
            len: series.len(),
        });
    }
    Ok(series.chunks_exact(block).map(|c| c.iter().sum()).collect())
}

/// Length precondition of an estimator. A constant series is reported as
/// such whatever its length.
pub(crate) fn require_len(series: &[f64], needed: usize) -> Result<(), EstimateError> {
    if is_constant(series) {
        Err(EstimateError::ConstantSeries)
    } else if series.len() < needed {
        Err(EstimateError::TooShort {
            needed,
            got: series.len(),
        })
    } else {
        Ok(())
    }
}

fn is_constant(series: &[f64]) -> bool {
    series.windows(2).all(|w| w[0] == w[1])
}

/// The series minus its mean; constant input is an error.
pub(crate) fn centered(series: &[f64]) -> Result<Vec<f64>, EstimateError> {
    if is_constant(series) {
        return Err(EstimateError::ConstantSeries);
    }
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    Ok(series.iter().map(|x| x - mean).collect())
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregate_blocks() {
        let ones = vec![1.0; 250];
        assert_eq!(aggregate(&ones, 100).unwrap(), vec![100.0, 100.0]);
        let x: Vec<f64> = (0..7).map(|i| i as f64).collect();
        assert_eq!(aggregate(&x, 1).unwrap(), x);
        assert!(aggregate(&x, 0).is_err());
        assert!(aggregate(&x, 8).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("hurst".parse::<Method>().is_err());
    }

    #[test]
    fn constant_series_rejected_everywhere() {
        for m in Method::ALL {
            let x = vec![3.0; 1000];
            assert_eq!(m.estimate(&x), Err(EstimateError::ConstantSeries), "{m}");
            let x = vec![3.0; 1 << 13];
            assert_eq!(m.estimate(&x), Err(EstimateError::ConstantSeries), "{m}");
        }
    }

    #[test]
    fn short_series_rejected() {
        let x = testdata::gaussian(300, 1);
        for m in Method::ALL {
            assert!(
                matches!(m.estimate(&x), Err(EstimateError::TooShort { .. })),
                "{m}"
            );
        }
    }
}
