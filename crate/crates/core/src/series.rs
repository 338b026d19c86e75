use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Which mechanism produced a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Markov,
    ItMap,
    Fgn,
    FgnThresholded,
    External,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::Markov => "markov",
            Generator::ItMap => "itmap",
            Generator::Fgn => "fgn",
            Generator::FgnThresholded => "fgn-thresholded",
            Generator::External => "external",
        }
    }
}

/// A finite 0/1 sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySeries {
    symbols: Vec<u8>,
    params: Option<ModelParams>,
    generator: Generator,
}

impl BinarySeries {
    pub fn new(symbols: Vec<u8>, generator: Generator) -> Result<Self> {
        if let Some(index) = symbols.iter().position(|&s| s > 1) {
            return Err(Error::InvalidSymbol { index });
        }
        Ok(Self::from_trusted(symbols, None, generator))
    }

    pub(crate) fn from_trusted(
        symbols: Vec<u8>,
        params: Option<ModelParams>,
        generator: Generator,
    ) -> Self {
        Self {
            symbols,
            params,
            generator,
        }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn params(&self) -> Option<&ModelParams> {
        self.params.as_ref()
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn mean(&self) -> f64 {
        let ones = self.symbols.iter().filter(|&&s| s == 1).count();
        ones as f64 / self.symbols.len() as f64
    }

    pub fn to_reals(&self) -> Vec<f64> {
        self.symbols.iter().map(|&s| s as f64).collect()
    }
}

/// A finite sequence of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSeries {
    values: Vec<f64>,
    generator: Generator,
}

impl RealSeries {
    pub fn new(values: Vec<f64>, generator: Generator) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSymbol { index });
        }
        Ok(Self { values, generator })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }
}
