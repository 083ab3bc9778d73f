//! Command-line front end: runs single-traffic, mixture and aggregate
//! experiments, emits plot-ready CSV plus JSON summaries, and drives the
//! validation suite.
//!
//! Exit codes: 0 success, 1 validation failure, 2 configuration error,
//! 3 I/O error.

mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ratedim",
    about = "Traffic-model and bandwidth dimensioning toolkit for mm-wave small cells",
    version
)]
pub struct Cli {
    /// Scenario file (TOML); defaults to the built-in baseline scenario.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the number of Monte Carlo runs / samples.
    #[arg(long, global = true)]
    runs: Option<u64>,

    /// Output file (CSV); summaries land next to it as *.summary.json.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (default: all cores). Results are identical for any
    /// worker count.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic density and Monte Carlo histogram for one traffic type.
    Pdf {
        #[arg(value_enum)]
        traffic: Traffic,
    },
    /// Single-user engaging-rate mixture: density data plus summary.
    Mixture,
    /// Cell aggregate over n_ue users: density/CDF data plus summary.
    Aggregate,
    /// Aggregate CDF converted to required spectrum bandwidth.
    Bandwidth,
    /// Average-rate planning table for UHD video formats.
    UhdTable {
        #[arg(value_enum)]
        codec: Codec,
    },
    /// Run every oracle and goodness-of-fit check; nonzero exit on breach.
    Validate,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Traffic {
    Web,
    Cs,
    Vr,
    Uhd,
}

impl Traffic {
    fn name(self) -> &'static str {
        match self {
            Traffic::Web => "web",
            Traffic::Cs => "cs",
            Traffic::Vr => "vr",
            Traffic::Uhd => "uhd",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Codec {
    Uncoded,
    H264,
    Hevc,
}

impl Codec {
    fn name(self) -> &'static str {
        match self {
            Codec::Uncoded => "uncoded",
            Codec::H264 => "h264",
            Codec::Hevc => "hevc",
        }
    }
    fn factor(self) -> f64 {
        match self {
            Codec::Uncoded => ratedim::rate::video::CODEC_UNCODED,
            Codec::H264 => ratedim::rate::video::CODEC_H264,
            Codec::Hevc => ratedim::rate::video::CODEC_HEVC,
        }
    }
}

/// Failure classes mapped onto process exit codes.
pub enum CliError {
    /// One or more validation thresholds breached (exit 1).
    Validation(Vec<String>),
    /// Bad scenario, flags or parameters (exit 2).
    Config(String),
    /// Filesystem trouble (exit 3).
    Io(String),
}

impl From<ratedim::Error> for CliError {
    fn from(e: ratedim::Error) -> Self {
        match e {
            ratedim::Error::Io(io) => CliError::Io(io.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(workers) = cli.workers {
        pool = pool.num_threads(workers);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(names)) => {
            eprintln!("validation failed: {}", names.join(", "));
            ExitCode::from(1)
        }
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = ratedim::scenario::parse_scenario(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(runs) = cli.runs {
        cfg.n_runs = runs;
    }
    cfg.validate().map_err(CliError::from)?;

    match &cli.command {
        Command::Pdf { traffic } => commands::cmd_pdf(&cfg, *traffic, cli.out.as_deref()),
        Command::Mixture => commands::cmd_mixture(&cfg, cli.out.as_deref()),
        Command::Aggregate => commands::cmd_aggregate(&cfg, cli.out.as_deref()),
        Command::Bandwidth => commands::cmd_bandwidth(&cfg, cli.out.as_deref()),
        Command::UhdTable { codec } => commands::cmd_uhd_table(*codec, cli.out.as_deref()),
        Command::Validate => commands::cmd_validate(&cfg, cli.runs),
    }
}
