use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrd::estimators::{aggregate, HurstEstimate, Method};
use lrd::experiments::{run_table, Source, TableConfig};
use lrd::fgn::fgn_generate;
use lrd::format::{read_series, write_series, Format, FormatError, Series};
use lrd::verify::{law_checks, sampler_checks, scaling_checks, Check};
use lrd_core::{hurst_to_alpha, MapParams, MapSource, MarkovSource, ModelParams};

/// Default block size when a binary series is estimated.
const BINARY_BLOCK: usize = 100;

#[derive(Debug, Parser)]
#[command(
    name = "lrd",
    version,
    about = "Long-range dependent traffic: generate, estimate, verify"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic series.
    Generate(GenerateArgs),
    /// Estimate the Hurst parameter of a series.
    Estimate(EstimateArgs),
    /// Check the chain's identities, samplers or scaling laws.
    Verify(VerifyArgs),
    /// Run the estimator comparison table.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Markov,
    Itmap,
    Fgn,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FileFormat {
    Bits,
    Lines,
    Csv,
}

impl From<FileFormat> for Format {
    fn from(f: FileFormat) -> Self {
        match f {
            FileFormat::Bits => Format::Bits,
            FileFormat::Lines => Format::Lines,
            FileFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Args)]
struct DependenceArgs {
    /// Hurst parameter in (0.5, 1); implies alpha = 2 (1 - H).
    #[arg(long, conflicts_with = "alpha")]
    hurst: Option<f64>,
    /// Tail exponent in (0, 1).
    #[arg(long)]
    alpha: Option<f64>,
    /// Fraction of ones (Markov only); implies pi0 = 1 - mean.
    #[arg(long, conflicts_with = "pi0")]
    mean: Option<f64>,
    /// Equilibrium mass of state 0 (Markov only).
    #[arg(long)]
    pi0: Option<f64>,
}

impl DependenceArgs {
    fn hurst(&self) -> Option<f64> {
        self.hurst.or(self.alpha.map(|a| 1.0 - a / 2.0))
    }

    fn model_params(&self, seed: u64) -> Result<ModelParams, Failure> {
        let alpha = match (self.hurst, self.alpha) {
            (Some(h), _) => hurst_to_alpha(h)?,
            (None, Some(a)) => a,
            (None, None) => return Err(Failure::usage("give --hurst or --alpha")),
        };
        let pi0 = match (self.mean, self.pi0) {
            (Some(m), _) => 1.0 - m,
            (None, Some(p)) => p,
            (None, None) => return Err(Failure::usage("give --mean or --pi0")),
        };
        if let Some(m) = self.mean {
            if !(m > 0.0 && m < 1.0) {
                return Err(Failure::usage(format!("mean = {m} is outside (0, 1)")));
            }
        }
        Ok(ModelParams::new(pi0, alpha, seed)?)
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[command(flatten)]
    dependence: DependenceArgs,
    /// Number of symbols (or FGN samples) to generate.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Emit sums of non-overlapping blocks of this many values.
    #[arg(long)]
    block: Option<usize>,
    /// Threshold of the intermittency map.
    #[arg(long, default_value_t = 0.5)]
    d: f64,
    #[arg(long, value_enum, default_value_t = FileFormat::Lines)]
    format: FileFormat,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a 64-bit FNV-1a hash of the emitted series to stderr.
    #[arg(long)]
    checksum: bool,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    /// Input file; stdin when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FileFormat::Lines)]
    format: FileFormat,
    /// Comma-separated method names, or "all".
    #[arg(long, default_value = "all")]
    methods: String,
    /// Block size for pre-aggregation. Defaults to 100 for 0/1 input and 1
    /// (no aggregation) otherwise.
    #[arg(long)]
    block: Option<usize>,
    /// Report as CSV.
    #[arg(long)]
    csv: bool,
    /// Print a 64-bit FNV-1a hash of the input series to stderr.
    #[arg(long)]
    checksum: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Level {
    Law,
    Sampler,
    Scaling,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0.5)]
    pi0: f64,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Level::Law)]
    level: Level,
    /// Largest k (law), number of draws (sampler) or series length (scaling).
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Points per analysed series; binary sources emit n * block symbols.
    #[arg(long, default_value_t = 1_000_000)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    replicas: usize,
    /// Comma-separated subset of fgn, itmap, markov; empty for none.
    #[arg(long, default_value = "fgn,itmap,markov")]
    generators: String,
    /// Comma-separated Hurst parameters.
    #[arg(long, default_value = "0.625,0.75,0.875")]
    hursts: String,
    #[arg(long, default_value_t = 100)]
    block: usize,
    /// CSV output.
    #[arg(long, conflicts_with = "text")]
    csv: bool,
    /// Aligned text output (the default).
    #[arg(long)]
    text: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed command: message for stderr and the process exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn io(err: impl std::fmt::Display) -> Self {
        Self {
            code: 3,
            message: format!("I/O error: {err}"),
        }
    }
}

impl From<lrd_core::Error> for Failure {
    fn from(e: lrd_core::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Io(e) => Failure::io(e),
            other => Failure::usage(other.to_string()),
        }
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Estimate(a) => estimate(a),
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("lrd: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => Ok(Box::new(File::create(p).map_err(Failure::io)?)),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn generate(a: GenerateArgs) -> Result<u8, Failure> {
    if a.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let start = Instant::now();
    let series = match a.model {
        Model::Markov => {
            let params = a.dependence.model_params(a.seed)?;
            let mut source = MarkovSource::new(params)?;
            match a.block {
                Some(b) => Series::Real(source.block_sums(block_size(b, a.n)? as u64, a.n / b)?),
                None => {
                    let mut s = vec![0u8; a.n];
                    source.fill(&mut s)?;
                    Series::Binary(s)
                }
            }
        }
        Model::Itmap => {
            let h = a
                .dependence
                .hurst()
                .ok_or_else(|| Failure::usage("give --hurst or --alpha"))?;
            let params = MapParams::for_hurst(a.d, h, a.seed)?;
            let mut source = MapSource::new(params);
            match a.block {
                Some(b) => Series::Real(source.block_sums(block_size(b, a.n)? as u64, a.n / b)),
                None => {
                    let mut s = vec![0u8; a.n];
                    source.fill(&mut s);
                    Series::Binary(s)
                }
            }
        }
        Model::Fgn => {
            let h = a
                .dependence
                .hurst()
                .ok_or_else(|| Failure::usage("give --hurst or --alpha"))?;
            let x = fgn_generate(h, a.n, a.seed)
                .map_err(|e| Failure::usage(e.to_string()))?
                .into_values();
            match a.block {
                Some(b) => {
                    Series::Real(aggregate(&x, b).map_err(|e| Failure::usage(e.to_string()))?)
                }
                None => Series::Real(x),
            }
        }
    };
    eprintln!(
        "generated {} values in {:.3} s",
        series.len(),
        start.elapsed().as_secs_f64()
    );
    if a.checksum {
        eprintln!("checksum {:016x}", series.checksum());
    }
    let out = output(&a.out)?;
    write_series(out, &series, a.format.into())?;
    Ok(0)
}

fn block_size(block: usize, n: usize) -> Result<usize, Failure> {
    if block == 0 || block > n {
        Err(Failure::usage(format!(
            "block size {block} does not fit a series of length {n}"
        )))
    } else {
        Ok(block)
    }
}

fn parse_methods(list: &str) -> Result<Vec<Method>, Failure> {
    if list == "all" {
        return Ok(Method::ALL.to_vec());
    }
    list.split(',')
        .map(|s| s.trim().parse::<Method>().map_err(Failure::usage))
        .collect()
}

fn estimate(a: EstimateArgs) -> Result<u8, Failure> {
    let methods = parse_methods(&a.methods)?;
    let input: Box<dyn Read> = match &a.input {
        Some(p) => Box::new(File::open(p).map_err(Failure::io)?),
        None => Box::new(io::stdin().lock()),
    };
    let series = read_series(input, a.format.into())?;
    if series.is_empty() {
        return Err(Failure::usage("input is empty"));
    }
    if a.checksum {
        eprintln!("checksum {:016x}", series.checksum());
    }
    let block = a.block.unwrap_or(match series {
        Series::Binary(_) => BINARY_BLOCK,
        Series::Real(_) => 1,
    });
    let x = aggregate(&series.to_reals(), block).map_err(|e| Failure::usage(e.to_string()))?;
    let results: Vec<(Method, Result<HurstEstimate, _>)> =
        methods.iter().map(|&m| (m, m.estimate(&x))).collect();

    let mut report = String::new();
    if a.csv {
        report.push_str("method,h,ci_low,ci_high,r2,n_used,error\n");
    }
    for (m, r) in &results {
        let opt = |v: Option<f64>| v.map(|v| format!("{v:.6}"));
        let line = match r {
            Ok(e) => {
                let (lo, hi) = (opt(e.ci.map(|c| c.0)), opt(e.ci.map(|c| c.1)));
                let r2 = opt(e.r2());
                if a.csv {
                    format!(
                        "{m},{:.6},{},{},{},{},",
                        e.h,
                        lo.unwrap_or_default(),
                        hi.unwrap_or_default(),
                        r2.unwrap_or_default(),
                        e.n_used
                    )
                } else {
                    let ci = match (lo, hi) {
                        (Some(l), Some(h)) => format!("[{l}, {h}]"),
                        _ => "-".to_string(),
                    };
                    format!(
                        "{:<14} {:>9.6} {:>22} {:>9} {:>9}",
                        m.name(),
                        e.h,
                        ci,
                        r2.unwrap_or_else(|| "-".into()),
                        e.n_used
                    )
                }
            }
            Err(e) if a.csv => format!("{m},,,,,,{}", e.tag()),
            Err(e) => format!("{:<14} ERR {}", m.name(), e.tag()),
        };
        report.push_str(&line);
        report.push('\n');
    }
    let mut out = io::stdout().lock();
    out.write_all(report.as_bytes()).map_err(Failure::io)?;
    out.flush().map_err(Failure::io)?;
    if results.iter().any(|(_, r)| r.is_ok()) {
        Ok(0)
    } else {
        Err(Failure::usage("no method produced an estimate"))
    }
}

fn verify(a: VerifyArgs) -> Result<u8, Failure> {
    let params = ModelParams::new(a.pi0, a.alpha, a.seed)?;
    let checks: Vec<Check> = match a.level {
        Level::Law => law_checks(&params, a.n.unwrap_or(1_000_000)),
        Level::Sampler => sampler_checks(&params, a.n.unwrap_or(10_000_000), a.seed)?,
        Level::Scaling => scaling_checks(
            &params,
            a.n.unwrap_or(10_000_000) as usize,
            1_000_000,
            a.seed,
        )
        .map_err(|e| Failure::usage(e.to_string()))?,
    };
    let mut out = io::stdout().lock();
    for c in &checks {
        writeln!(out, "{c}").map_err(Failure::io)?;
    }
    out.flush().map_err(Failure::io)?;
    Ok(if checks.iter().all(|c| c.pass) { 0 } else { 1 })
}

fn table(a: TableArgs) -> Result<u8, Failure> {
    let sources = a
        .generators
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Source>().map_err(Failure::usage))
        .collect::<Result<Vec<_>, _>>()?;
    let hursts = a
        .hursts
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("bad hurst value '{s}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let config = TableConfig {
        sources,
        hursts,
        replicas: a.replicas,
        n: a.n,
        block: a.block,
        seed: a.seed,
        ..TableConfig::default()
    };
    let threads = std::env::var("LRD_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let result = pool.install(|| run_table(&config));
    for (source, secs) in result.generate_seconds() {
        eprintln!("{}: generation took {secs:.2} s", source.name());
    }
    let body = if a.csv {
        result.to_csv()
    } else {
        result.to_text()
    };
    let mut out = output(&a.out)?;
    out.write_all(body.as_bytes()).map_err(Failure::io)?;
    out.flush().map_err(Failure::io)?;
    Ok(0)
}
