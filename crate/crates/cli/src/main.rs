//! `pzeta`: covariance curves, zero-difference histograms, conditional
//! extreme-value probabilities and the verification gates.

mod commands;
mod manifest;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "pzeta",
    version,
    about = "Prime zeta statistics and zero-difference repulsion"
)]
struct Cli {
    /// Worker thread cap; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Covariance curve Re P_t(1+iΔ) with the log|ζ(1+iΔ)| reference.
    CovCurve(CovCurveArgs),
    /// Histogram of differences between zero ordinates.
    ZeroHist(ZeroHistArgs),
    /// Conditional probability of an extreme value near a zero.
    CondProb(CondProbArgs),
    /// Run the verification gates and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GridArgs {
    #[arg(long)]
    pub delta_min: Option<f64>,
    #[arg(long)]
    pub delta_max: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CovCurveArgs {
    /// Sum over primes p ≤ LIMIT.
    #[arg(long, conflicts_with = "nth_prime_limit")]
    pub limit: Option<u64>,
    /// Sum over the first N primes [default: 1000000].
    #[arg(long)]
    pub nth_prime_limit: Option<u64>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output CSV path, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZeroHistArgs {
    /// Zero ordinates, one per line.
    #[arg(long, env = "PZETA_ZEROS")]
    pub zeros: String,
    /// Use only the first N zeros.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 5.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 30.0)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.05)]
    pub bin_width: f64,
    /// Comma-separated trough centers to score.
    #[arg(long, value_delimiter = ',')]
    pub troughs: Vec<f64>,
    #[arg(long, default_value_t = 0.15)]
    pub half_width: f64,
    #[arg(long, default_value_t = 1.0)]
    pub window: f64,
    /// Histogram CSV path, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Trough-score JSON path [default: standard error when troughs are given].
    #[arg(long)]
    pub report: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaArg {
    /// σ = √(½ log log τ)
    Std,
    /// σ = ½ log log τ
    #[value(name = "paper-caption")]
    #[serde(rename = "paper-caption")]
    Variance,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CondProbArgs {
    /// Zero ordinates, used to look up τ.
    #[arg(long, env = "PZETA_ZEROS")]
    pub zeros: Option<String>,
    /// 1-based index of the zero used as τ.
    #[arg(long, default_value_t = 100_000, conflicts_with = "tau")]
    pub zero_index: usize,
    /// Height τ given directly.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Threshold in units of σ.
    #[arg(long, default_value_t = 3.0)]
    pub sigmas: f64,
    #[arg(long, value_enum, default_value_t = SigmaArg::Std)]
    pub sigma_convention: SigmaArg,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
    pub level: LevelArg,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Zero ordinates; gates that need zeros are skipped without them.
    #[arg(long, env = "PZETA_ZEROS")]
    pub zeros: Option<String>,
    /// Report path, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    #[arg(long, hide = true, default_value_t = 1.0)]
    pub tolerance_scale: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::CovCurve(a) => commands::cov_curve(a, start),
        Command::ZeroHist(a) => commands::zero_hist(a, start),
        Command::CondProb(a) => commands::cond_prob(a, start),
        Command::Verify(a) => commands::verify(a, start),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
