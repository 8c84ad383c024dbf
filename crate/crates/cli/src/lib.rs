//! Command-line front end: each subcommand writes a CSV table or a JSON report.

pub mod commands;
pub mod config;
pub mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use config::{Format, Overrides, RunConfig};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    /// A report ran but one of its checks failed.
    pub const CHECK_FAILED: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const CONVERGENCE: u8 = 3;
    pub const IO: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Numeric(hermitewave::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn config(e: hermitewave::Error) -> Self {
        CliError::Config(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Numeric(hermitewave::Error::Domain(_)) => exit::CONFIG,
            CliError::Numeric(_) => exit::CONVERGENCE,
            CliError::Io(_) => exit::IO,
            CliError::Json(e) if e.is_io() => exit::IO,
            CliError::Json(_) => exit::CONFIG,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hermitewave",
    version,
    about = "Free-particle Hermite wavepacket explorer"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub overrides: Overrides,
    /// Print the resolved configuration as JSON and exit
    #[arg(long, global = true)]
    pub print_config: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Probability density on the (t, x) grid
    Density,
    /// Density maxima per time step
    Peaks,
    /// Caustic of the classical path family per time step
    Caustic,
    /// Classical straight-line paths sampled on the time grid
    Paths,
    /// Phase-space loci of the path family at the requested times
    Phasespace,
    /// Moment table with numeric-vs-closed-form deltas
    Observables,
    /// Full self-check; exit status reflects the outcome
    Verify {
        /// Use a wavefunction with the wrong chirp sign (negative control)
        #[arg(long, hide = true)]
        corrupt_phase: bool,
    },
}

/// Caps the worker pool from `HERMITEWAVE_THREADS` when set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("HERMITEWAVE_THREADS") else {
        return Ok(());
    };
    let count: usize = raw.trim().parse().ok().filter(|&c| c > 0).ok_or_else(|| {
        CliError::Config(format!(
            "HERMITEWAVE_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    // a second initialisation only happens in tests; ignore it
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(count)
        .build_global();
    Ok(())
}

pub fn run(cli: &Cli) -> Result<commands::Outcome, CliError> {
    configure_threads()?;
    let cfg = cli.overrides.resolve()?;
    if cli.print_config {
        println!("{}", serde_json::to_string_pretty(&cfg)?);
        return Ok(commands::Outcome { passed: true });
    }
    match &cli.command {
        Command::Density => commands::density(&cfg),
        Command::Peaks => commands::peaks(&cfg),
        Command::Caustic => commands::caustic_cmd(&cfg),
        Command::Paths => commands::paths(&cfg),
        Command::Phasespace => commands::phasespace(&cfg),
        Command::Observables => commands::observables(&cfg),
        Command::Verify { corrupt_phase } => commands::verify(&cfg, *corrupt_phase),
    }
}

pub fn main_with(cli: Cli) -> ExitCode {
    match run(&cli) {
        Ok(outcome) if outcome.passed => ExitCode::from(exit::SUCCESS),
        Ok(_) => ExitCode::from(exit::CHECK_FAILED),
        Err(e) => {
            eprintln!("hermitewave: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
