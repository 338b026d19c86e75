//! Binary time series with exact, tunable long-range dependence.
//!
//! The generator is an infinite Markov chain on the non-negative integers. From
//! state 0 the chain jumps to state `k` with probability `f_k`; from any state
//! `k > 0` it moves deterministically to `k - 1`. The emitted symbol is 0 when
//! the chain sits in state 0 and 1 otherwise. Choosing
//!
//! ```text
//! f_k = ((1 - pi0) / pi0) * (k^-a - 2 (k+1)^-a + (k+2)^-a)      k > 0
//! f_0 = 1 - ((1 - pi0) / pi0) * (1 - 2^-a)
//! ```
//!
//! gives a stationary series with mean `1 - pi0` and autocorrelations decaying
//! like `k^-a`, i.e. Hurst parameter `H = 1 - a/2`.
//!
//! Everything here is `no_std` (with `alloc`); disable the default `std`
//! feature to build without the standard library. Floating point maths then
//! goes through `libm`.
//!
//! ```
//! use lrd_core::{generate, ModelParams};
//!
//! let params = ModelParams::from_mean_hurst(0.5, 0.75, 42).unwrap();
//! let series = generate(&params, 10_000).unwrap();
//! assert_eq!(series.len(), 10_000);
//! ```
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod chain;
mod error;
pub mod itmap;
pub mod law;
mod params;
pub mod rng;
pub mod sampler;
pub mod series;

pub use chain::{generate, step, ChainState, MarkovSource};
pub use error::{Error, Result};
pub use itmap::{hurst_to_m, m_to_hurst, map_generate, map_step, MapParams, MapSource};
pub use law::{conditional_range_prob, equilibrium_pi, equilibrium_tail, jump_prob, jump_tail};
pub use params::{alpha_to_hurst, hurst_to_alpha, validity_threshold, ModelParams};
pub use sampler::{sample_initial, sample_jump, EquilibriumSampler, JumpSampler};
pub use series::{BinarySeries, Generator, RealSeries};
