//! The infinite chain as a streaming symbol source.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::rng::{stream_rng, StreamRng};
use crate::sampler::{EquilibriumSampler, JumpSampler};
use crate::series::{BinarySeries, Generator};

/// Current state `X_n` of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ChainState(u64);

impl ChainState {
    pub const ZERO: ChainState = ChainState(0);

    pub fn new(x: u64) -> Self {
        Self(x)
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn symbol(self) -> u8 {
        (self.0 != 0) as u8
    }
}

/// Advances the chain by one step. States above 0 count down without
/// touching the random stream.
#[inline]
pub fn step<R: RngCore + ?Sized>(
    state: ChainState,
    rng: &mut R,
    jumps: &JumpSampler,
) -> Result<ChainState> {
    match state.0 {
        0 => jumps.sample(rng).map(ChainState),
        x => Ok(ChainState(x - 1)),
    }
}

/// An unbounded, reproducible stream of chain symbols.
///
/// The starting state is drawn from equilibrium. Symbols can be pulled in
/// any sized pieces; the concatenation does not depend on how the stream was
/// split, and more symbols can always be requested later.
#[derive(Debug, Clone)]
pub struct MarkovSource {
    params: ModelParams,
    jumps: JumpSampler,
    rng: StreamRng,
    /// State whose symbol is emitted next.
    state: u64,
    emitted: u64,
}

impl MarkovSource {
    pub fn new(params: ModelParams) -> Result<Self> {
        Self::with_stream(params, 0)
    }

    /// Source driven by substream `stream` of the params' seed.
    pub fn with_stream(params: ModelParams, stream: u64) -> Result<Self> {
        let mut rng = stream_rng(params.seed(), stream);
        let state = EquilibriumSampler::new(&params).sample(&mut rng)?;
        Ok(Self {
            params,
            jumps: JumpSampler::new(&params),
            rng,
            state,
            emitted: 0,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn state(&self) -> ChainState {
        ChainState(self.state)
    }

    /// Number of symbols emitted so far.
    pub fn position(&self) -> u64 {
        self.emitted
    }

    pub fn next_symbol(&mut self) -> Result<u8> {
        let y = (self.state != 0) as u8;
        self.state = step(ChainState(self.state), &mut self.rng, &self.jumps)?.0;
        self.emitted += 1;
        Ok(y)
    }

    /// Fills `out` with the next `out.len()` symbols.
    pub fn fill(&mut self, out: &mut [u8]) -> Result<()> {
        let mut i = 0;
        while i < out.len() {
            if self.state > 0 {
                let run = self.state.min((out.len() - i) as u64);
                out[i..i + run as usize].fill(1);
                self.state -= run;
                i += run as usize;
            } else {
                out[i] = 0;
                i += 1;
                self.state = self.jumps.sample(&mut self.rng)?;
            }
        }
        self.emitted += out.len() as u64;
        Ok(())
    }

    /// Number of ones among the next `len` symbols, without materialising them.
    pub fn count_ones(&mut self, len: u64) -> Result<u64> {
        let mut left = len;
        let mut ones = 0;
        while left > 0 {
            if self.state > 0 {
                let run = self.state.min(left);
                ones += run;
                self.state -= run;
                left -= run;
            } else {
                left -= 1;
                self.state = self.jumps.sample(&mut self.rng)?;
            }
        }
        self.emitted += len;
        Ok(ones)
    }

    /// Sums of `count` consecutive non-overlapping blocks of `block` symbols.
    pub fn block_sums(&mut self, block: u64, count: usize) -> Result<Vec<f64>> {
        (0..count)
            .map(|_| self.count_ones(block).map(|c| c as f64))
            .collect()
    }
}

/// `n` symbols from a fresh source seeded by `params`.
pub fn generate(params: &ModelParams, n: usize) -> Result<BinarySeries> {
    if n == 0 {
        return Err(Error::EmptySeries);
    }
    let mut source = MarkovSource::new(*params)?;
    let mut symbols = vec![0u8; n];
    source.fill(&mut symbols)?;
    Ok(BinarySeries::from_trusted(
        symbols,
        Some(*params),
        Generator::Markov,
    ))
}
