//! `diophant`: continued fractions, Dirichlet beta values and the
//! approximation audit from the command line.

mod commands;
mod error;
mod report;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use diophant_core::numerics::Precision;

use crate::error::CliError;
use crate::report::Format;

#[derive(Parser, Debug)]
#[command(
    name = "diophant",
    version,
    about = "Certified continued fractions, beta values and approximation audits"
)]
struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "DIOPHANT_PRECISION_BITS", default_value_t = Precision::DEFAULT_BITS)]
    precision: u32,
    /// Output format. `constants` and `cf expand` default to text, the rest to JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a named constant or closed form.
    Constants(commands::constants::ConstantsArgs),
    /// Continued-fraction expansion, statistics and classification.
    #[command(subcommand)]
    Cf(commands::cf::CfCommand),
    /// Approximation quality, irrationality measure and Roth census.
    #[command(subcommand)]
    Diag(commands::diag::DiagCommand),
    /// Measure the partial-sum approximation chain of L(s, chi)^2.
    Audit(commands::audit::AuditArgs),
    /// Exact partial sums of L(s, chi)^2 at a list of cutoffs.
    Partial(commands::audit::PartialArgs),
    /// Divisor sieve, coincidence density and factor statistics.
    #[command(subcommand)]
    Stats(commands::stats::StatsCommand),
}

/// Settings shared by every subcommand.
pub struct RunConfig {
    pub precision: Precision,
    pub seed: u64,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let precision = Precision::new(cli.precision)?;
    let config = RunConfig {
        precision,
        seed: cli.seed,
    };
    let report = match &cli.command {
        Command::Constants(args) => commands::constants::run(args, &config)?,
        Command::Cf(cmd) => commands::cf::run(cmd, &config)?,
        Command::Diag(cmd) => commands::diag::run(cmd, &config)?,
        Command::Audit(args) => commands::audit::run(args, &config)?,
        Command::Partial(args) => commands::audit::run_partial(args)?,
        Command::Stats(cmd) => commands::stats::run(cmd, &config)?,
    };
    report::emit(&report.render(cli.format)?, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("diophant: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
