use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use lrd_core::rng::stream_rng;
use lrd_core::{MapParams, MapSource, MarkovSource, ModelParams};
use rayon::prelude::*;

use crate::estimators::{EstimateError, HurstEstimate, Method};
use crate::fgn::fgn_generate_with;

/// Fits whose coefficient of determination falls below this are flagged.
pub const LOW_R2: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Fgn,
    ItMap,
    Markov,
}

impl Source {
    pub const ALL: [Source; 3] = [Source::Fgn, Source::ItMap, Source::Markov];

    pub fn name(self) -> &'static str {
        match self {
            Source::Fgn => "fgn",
            Source::ItMap => "itmap",
            Source::Markov => "markov",
        }
    }

    fn label(self) -> &'static str {
        match self {
            Source::Fgn => "FGN",
            Source::ItMap => "It. map",
            Source::Markov => "Markov",
        }
    }

    fn code(self) -> u64 {
        match self {
            Source::Fgn => 1,
            Source::ItMap => 2,
            Source::Markov => 3,
        }
    }
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Source::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown generator '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableConfig {
    pub sources: Vec<Source>,
    pub hursts: Vec<f64>,
    pub replicas: usize,
    /// Points per analysed series. Binary sources emit `n * block` symbols.
    pub n: usize,
    pub block: usize,
    pub seed: u64,
    /// Fraction of ones for the Markov source.
    pub markov_mean: f64,
    /// Threshold of the intermittency map.
    pub map_d: f64,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            sources: Source::ALL.to_vec(),
            hursts: vec![0.625, 0.75, 0.875],
            replicas: 3,
            n: 1_000_000,
            block: 100,
            seed: 1,
            markov_mean: 0.5,
            map_d: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub source: Source,
    pub hurst: f64,
    pub replica: usize,
    /// One entry per [`Method::ALL`], in that order.
    pub estimates: Vec<Result<HurstEstimate, String>>,
    pub generate_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableResult {
    pub cells: Vec<Cell>,
}

impl TableConfig {
    /// Random substream for a cell. Derived from the cell's identity rather
    /// than its position, so a sub-table reproduces the matching cells of
    /// the full one.
    fn stream(&self, source: Source, hurst: f64, replica: usize) -> u64 {
        let h = (hurst * 1e6).round() as u64;
        (source.code() << 56) | (h << 24) | replica as u64
    }

    fn series(&self, source: Source, hurst: f64, replica: usize) -> Result<Vec<f64>, String> {
        let stream = self.stream(source, hurst, replica);
        let blocks = self.n;
        match source {
            Source::Fgn => fgn_generate_with(hurst, self.n, &mut stream_rng(self.seed, stream))
                .map(|s| s.into_values())
                .map_err(|e| e.to_string()),
            Source::ItMap => {
                let p = MapParams::for_hurst(self.map_d, hurst, self.seed)
                    .map_err(|e| e.to_string())?;
                Ok(MapSource::with_stream(p, stream).block_sums(self.block as u64, blocks))
            }
            Source::Markov => {
                let p = ModelParams::from_mean_hurst(self.markov_mean, hurst, self.seed)
                    .map_err(|e| e.to_string())?;
                MarkovSource::with_stream(p, stream)
                    .and_then(|mut s| s.block_sums(self.block as u64, blocks))
                    .map_err(|e| e.to_string())
            }
        }
    }
}

/// Runs every (source, H, replica) cell through all six estimators.
///
/// Cells run in parallel but come back in table order, and each has its own
/// random substream, so the output depends only on the config. A failure in
/// one cell is recorded in that cell alone.
pub fn run_table(config: &TableConfig) -> TableResult {
    let jobs: Vec<(Source, f64, usize)> = config
        .sources
        .iter()
        .flat_map(|&s| {
            config
                .hursts
                .iter()
                .flat_map(move |&h| (0..config.replicas).map(move |r| (s, h, r)))
        })
        .collect();
    let cells = jobs
        .into_par_iter()
        .map(|(source, hurst, replica)| {
            let start = Instant::now();
            let series = config.series(source, hurst, replica);
            let generate_seconds = start.elapsed().as_secs_f64();
            let estimates = match series {
                Ok(x) => Method::ALL
                    .iter()
                    .map(|m| {
                        m.estimate(&x)
                            .map_err(|e: EstimateError| e.tag().to_string())
                    })
                    .collect(),
                Err(e) => vec![Err(e); Method::ALL.len()],
            };
            Cell {
                source,
                hurst,
                replica,
                estimates,
                generate_seconds,
            }
        })
        .collect();
    TableResult { cells }
}

fn value(est: &Result<HurstEstimate, String>) -> String {
    match est {
        Ok(e) => {
            let flag = if e.r2().is_some_and(|r2| r2 < LOW_R2) {
                "*"
            } else {
                ""
            };
            format!("{:.3}{flag}", e.h)
        }
        Err(_) => "ERR".to_string(),
    }
}

impl TableResult {
    /// Total generation time per source, in first-seen order.
    pub fn generate_seconds(&self) -> Vec<(Source, f64)> {
        let mut out: Vec<(Source, f64)> = Vec::new();
        for c in &self.cells {
            match out.iter_mut().find(|(s, _)| *s == c.source) {
                Some((_, t)) => *t += c.generate_seconds,
                None => out.push((c.source, c.generate_seconds)),
            }
        }
        out
    }

    /// Aligned text table. Estimates from fits with `r2 < 0.9` carry a `*`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let head = [
            "R/S",
            "Mod. R/S",
            "Agg. Var.",
            "Periodogram",
            "Local Whit.",
            "Wavelets",
        ];
        write!(out, "{:<8} {:<6}", "Source", "H").unwrap();
        for h in head {
            write!(out, " {h:>11}").unwrap();
        }
        out.push('\n');
        let mut previous: Option<(Source, f64)> = None;
        for c in &self.cells {
            if previous.is_some_and(|p| p != (c.source, c.hurst)) {
                out.push_str(&"-".repeat(15 + 12 * head.len()));
                out.push('\n');
            }
            previous = Some((c.source, c.hurst));
            write!(out, "{:<8} {:<6}", c.source.label(), c.hurst).unwrap();
            for e in &c.estimates {
                write!(out, " {:>11}", value(e)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// CSV with one row per cell. Failed estimates are `ERR`; the last
    /// column lists the methods whose fit had `r2 < 0.9`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,hurst,replica");
        for m in Method::ALL {
            write!(out, ",{}", m.name()).unwrap();
        }
        out.push_str(",low_r2\n");
        for c in &self.cells {
            write!(out, "{},{},{}", c.source.name(), c.hurst, c.replica).unwrap();
            for e in &c.estimates {
                match e {
                    Ok(e) => write!(out, ",{:.6}", e.h).unwrap(),
                    Err(_) => out.push_str(",ERR"),
                }
            }
            let low: Vec<&str> = c
                .estimates
                .iter()
                .filter_map(|e| e.as_ref().ok())
                .filter(|e| e.r2().is_some_and(|r2| r2 < LOW_R2))
                .map(|e| e.method.name())
                .collect();
            writeln!(out, ",{}", low.join(";")).unwrap();
        }
        out
    }
}
