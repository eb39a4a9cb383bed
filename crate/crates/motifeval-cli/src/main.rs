//! Command-line front-end: evaluation, benchmark generation, ranking
//! analysis, the random-walk demonstration, and archive import.
//!
//! Exit codes: 0 on success, 2 on parse or validation failures, 3 when
//! a ground-truth file contains overlapping segments.

mod commands;
mod formats;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    /// A file failed to parse or validate (exit 2).
    Input(String),
    /// Ground-truth segments overlap (exit 3).
    GroundTruthOverlap(String),
    /// Unexpected internal failure (exit 1).
    Internal(String),
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self::Input(message.into())
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::Internal(message.into())
    }

    /// Wraps a library error, routing ground-truth overlaps to exit 3.
    pub fn from_lib(context: &str, err: motifeval::Error) -> Self {
        match err {
            motifeval::Error::GroundTruthOverlap { violations } => {
                let mut lines: Vec<String> =
                    violations.iter().take(10).map(|v| format!("  {v}")).collect();
                if violations.len() > 10 {
                    lines.push(format!("  ... and {} more", violations.len() - 10));
                }
                Self::GroundTruthOverlap(format!(
                    "{context}: ground-truth motif sets overlap\n{}",
                    lines.join("\n")
                ))
            }
            other => Self::Input(format!("{context}: {other}")),
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Input(m) | Self::GroundTruthOverlap(m) | Self::Internal(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            Self::Internal(_) => 1,
            Self::Input(_) => 2,
            Self::GroundTruthOverlap(_) => 3,
        }
    }
}

/// Seed resolution order: flag, then MOTIFEVAL_SEED, then 0.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("MOTIFEVAL_SEED") {
        Ok(text) => text.trim().parse().map_err(|e| {
            CliError::input(format!("MOTIFEVAL_SEED '{text}' is not a valid seed: {e}"))
        }),
        Err(_) => Ok(0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AveragingArg {
    Micro,
    Macro,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricKind {
    /// Precision, recall, and F1 under optimal matching.
    Prom,
    /// Correctness averaged over matched set pairs.
    Cm,
    /// Correctness averaged over all ground-truth sets.
    Cg,
    /// Start-index difference score (lower is better).
    Score,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TauModeArg {
    Combined,
    PerDatasetAverage,
}

#[derive(Parser)]
#[command(name = "motifeval", version, about = "Quantitative evaluation of time-series motif discovery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate discovered motif sets against a ground-truth file
    Eval(EvalArgs),
    /// Generate an annotated benchmark from a labeled instance dataset
    Gen(GenArgs),
    /// Rank-correlate metrics or compute average method ranks
    Rank(RankArgs),
    /// Random-walk benchmark demonstration with the stationarity solver
    Rwdemo(RwdemoArgs),
    /// Convert tab-separated archive instances to the dataset format
    ImportUcr(ImportUcrArgs),
}

#[derive(Args)]
pub struct EvalArgs {
    /// Ground-truth motif-set file
    pub gt: PathBuf,
    /// Discovered motif-set file
    pub pred: PathBuf,
    /// Metrics to compute
    #[arg(long, value_delimiter = ',', default_value = "prom")]
    pub metrics: Vec<MetricKind>,
    #[arg(long, value_enum, default_value_t = AveragingArg::Micro)]
    pub averaging: AveragingArg,
    /// Overlap-rate threshold for matching, in [0.5, 1]
    #[arg(long, default_value_t = 0.5)]
    pub or_threshold: f64,
    /// Count motifs of unmatched discovered sets as false positives
    #[arg(long)]
    pub penalize_offtarget: bool,
    /// Add unmatched discovered set lengths to the score value
    #[arg(long)]
    pub score_penalize_offtarget: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout; a manifest is written
    /// alongside
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct GenArgs {
    /// Labeled instance dataset (JSON)
    pub dataset: PathBuf,
    /// Output directory; receives validation/, test/, and manifest.json
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = motifeval::benchgen::DEFAULT_VALIDATION_SERIES)]
    pub n_val: usize,
    #[arg(long, default_value_t = motifeval::benchgen::DEFAULT_TEST_SERIES)]
    pub n_test: usize,
    /// Fraction of instances reserved for the validation split
    #[arg(long, default_value_t = motifeval::benchgen::DEFAULT_SPLIT_RATIO)]
    pub split_ratio: f64,
    /// Upper bound on sampled motif-set cardinalities
    #[arg(long, default_value_t = 5)]
    pub cardinality_cap: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct RankArgs {
    /// Results table (JSON)
    pub results: PathBuf,
    /// Pool all datasets or average per-dataset correlations
    #[arg(long, value_enum, default_value_t = TauModeArg::Combined)]
    pub mode: TauModeArg,
    /// Emit the average-rank table for this metric instead of the tau
    /// matrix
    #[arg(long)]
    pub avg_ranks: Option<String>,
    /// Metrics ranked ascending (lower values are better)
    #[arg(long, value_delimiter = ',', default_value = "score")]
    pub lower_better: Vec<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RwdemoArgs {
    /// Univariate labeled instance dataset (JSON)
    pub dataset: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub n_series: usize,
    /// Sliding window length; defaults to half the mean instance length
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Window step; defaults to window / 4
    #[arg(long)]
    pub stride: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub insert_min: usize,
    #[arg(long, default_value_t = 8)]
    pub insert_max: usize,
    /// Series length; defaults to 25x the mean instance length
    #[arg(long)]
    pub rw_length: Option<usize>,
    /// Minimum walk samples between insertions; defaults to 2x window
    #[arg(long)]
    pub min_gap: Option<usize>,
    /// Group ground truth by class instead of one set of all insertions
    #[arg(long)]
    pub group_by_class: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Also write the generated series and the report into this directory
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct ImportUcrArgs {
    /// Tab-separated instance files (label followed by values per line)
    pub inputs: Vec<PathBuf>,
    /// Dataset name recorded in the output
    #[arg(long)]
    pub name: String,
    /// Output dataset path (JSON)
    #[arg(long)]
    pub out: PathBuf,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval(args) => commands::eval::run(&args),
        Command::Gen(args) => commands::gen::run(&args),
        Command::Rank(args) => commands::rank::run(&args),
        Command::Rwdemo(args) => commands::rwdemo::run(&args),
        Command::ImportUcr(args) => commands::import::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
