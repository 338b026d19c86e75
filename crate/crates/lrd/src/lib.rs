//! Long-range dependent binary traffic: the infinite Markov chain generator
//! from `lrd-core` together with reference generators, Hurst estimators,
//! numerical checks and file formats.

pub mod estimators;
pub mod fgn;

pub use lrd_core as core;
pub mod experiments;
pub mod format;
pub mod verify;
