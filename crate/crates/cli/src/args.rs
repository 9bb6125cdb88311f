use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use predict_core::Ratio;

#[derive(Debug, Parser)]
#[command(
    name = "predict",
    version,
    about = "Exact analyses of sequence predictors and randomness tests"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit the report as one JSON object.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the converted object (convert) or the report (other commands) to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Redundancy and growth-rate profile of a predictor along a stream.
    Analyze(AnalyzeArgs),
    /// Frequency of confirmed predictions in a probability window.
    Calibrate(CalibrateArgs),
    /// Convert between predictors, processes and martingales.
    Convert(ConvertArgs),
    /// Build a sequence on which an exact predictor has bounded redundancy.
    Adversary(AdversaryArgs),
}

fn ratio(s: &str) -> Result<Ratio, String> {
    s.parse().map_err(|e: predict_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_name = "FILE")]
    pub stream: PathBuf,
    #[arg(long, value_name = "SPEC")]
    pub predictor: String,
    /// `linear A`, `sqrt`, `log2` or `table V,V,...`, optionally `+ OFFSET`.
    #[arg(long, value_name = "SPEC", default_value = "linear 1")]
    pub growth: String,
    /// Stage at which predictors without exact values are read.
    #[arg(long, value_name = "N", default_value_t = 64)]
    pub stages: u64,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long, value_name = "FILE")]
    pub stream: PathBuf,
    #[arg(long, value_name = "SPEC")]
    pub predictor: String,
    /// Window `[r, s]` with `1/2 < r <= s < 1`.
    #[arg(long, num_args = 2, value_names = ["R", "S"], value_parser = ratio, required = true)]
    pub window: Vec<Ratio>,
    /// Slack allowed around the window before the verdict leaves "within".
    #[arg(long, value_name = "T", value_parser = ratio, default_value = "0")]
    pub tolerance: Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// A monotone process whose Solomonoff values are the predictor's.
    Process,
    /// The distribution of an endless process.
    Distribution,
    /// The fair martingale `2^|x| p(x)`.
    Martingale,
    /// A process with one reduced encoding per binary digit.
    #[value(name = "digit_aligned", alias = "digit-aligned")]
    DigitAligned,
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::Process => "process",
            Target::Distribution => "distribution",
            Target::Martingale => "martingale",
            Target::DigitAligned => "digit_aligned",
        }
    }
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[arg(long, value_name = "SPEC", conflicts_with = "process")]
    pub predictor: Option<String>,
    /// Process table file (`input<TAB>output` lines).
    #[arg(long, value_name = "FILE")]
    pub process: Option<PathBuf>,
    #[arg(long, value_name = "N", default_value_t = 4)]
    pub depth: usize,
    #[arg(long, value_name = "N", default_value_t = 8)]
    pub stages: u64,
    /// Enumeration steps allowed when reading a process.
    #[arg(long, value_name = "N", default_value_t = 100_000)]
    pub budget: u64,
    /// Skip adding `x -> y` for inputs whose two children both map below `y`.
    #[arg(long)]
    pub no_closure: bool,
}

#[derive(Debug, Args)]
pub struct AdversaryArgs {
    #[arg(long, value_name = "SPEC")]
    pub predictor: String,
    /// Length of the constructed prefix.
    #[arg(long, visible_alias = "depth", value_name = "N", default_value_t = 16)]
    pub length: usize,
}
