//! Numerical checks of the chain's asymptotics and the estimator comparison
//! table.

mod scaling;
mod table;

use thiserror::Error;

use crate::estimators::EstimateError;

pub use scaling::{
    acf_slope_check, chain_acf, count_variance_check, count_variance_of, default_lags,
    exact_acf_slope, expected_variance_prefactor, tail_check, tail_prefactor_ratio, CountVariance,
};
pub use table::{run_table, Cell, Source, TableConfig, TableResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("need at least {needed} replicas, got {got}")]
    TooFewReplicas { needed: usize, got: usize },
    #[error("autocorrelation is not positive at lags {lags:?}")]
    NegativeAcf { lags: Vec<usize> },
    #[error("scale list must be increasing and start at 1 or more")]
    BadScales,
    #[error(transparent)]
    Model(#[from] lrd_core::Error),
    #[error(transparent)]
    Estimate(#[from] EstimateError),
}
