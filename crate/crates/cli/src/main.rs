//! `csgamma` — simulation, exact analytics, and bounds for the limiting
//! normalized LCS of d random k-ary strings, from the command line.
//!
//! Every run is reproducible: all randomness flows from one `--seed`
//! (randomly chosen and echoed when omitted), trial-level parallelism uses
//! per-trial child seeds, and output bytes do not depend on `--workers`.

mod commands;
mod emit;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use csgamma::{Error, Result};

use emit::{Emitter, Format};

#[derive(Parser)]
#[command(
    name = "csgamma",
    version,
    about = "Chvátal–Sankoff constant toolkit: exact LCS, greedy matching, \
             coin-process analytics, entropy bounds, Monte Carlo, and \
             deletion-code experiments"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for parallel trials (default: all cores). Never
    /// changes results, only wall time.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact LCS of two or more strings (explicit, file, or sampled).
    Lcs(commands::lcs::LcsArgs),
    /// Best LCS over prefix splits of a fixed symbol budget.
    Diag(commands::diag::DiagArgs),
    /// Round-based greedy majority matcher.
    Greedy(commands::greedy::GreedyArgs),
    /// Coin-process analytics (E[Y], E[Z]) and simulation.
    Coins(commands::coins::CoinsArgs),
    /// Analytic lower/upper bounds for one (k, d).
    Bounds(commands::bounds::BoundsArgs),
    /// Monte Carlo estimate of the normalized LCS.
    Estimate(commands::estimate::EstimateArgs),
    /// Deletion-code list-decodability checks and sweeps.
    Codes(commands::codes::CodesArgs),
    /// Bound table over a (k, d) grid, optionally with Monte Carlo columns.
    Table(commands::table::TableArgs),
}

fn dispatch(command: &Command, emitter: &mut Emitter) -> Result<()> {
    match command {
        Command::Lcs(args) => commands::lcs::run(args, emitter),
        Command::Diag(args) => commands::diag::run(args, emitter),
        Command::Greedy(args) => commands::greedy::run(args, emitter),
        Command::Coins(args) => commands::coins::run(args, emitter),
        Command::Bounds(args) => commands::bounds::run(args, emitter),
        Command::Estimate(args) => commands::estimate::run(args, emitter),
        Command::Codes(args) => commands::codes::run(args, emitter),
        Command::Table(args) => commands::table::run(args, emitter),
    }
}

fn try_main(cli: &Cli) -> Result<()> {
    let mut emitter = Emitter::new(cli.format, cli.out.as_deref())?;
    match cli.workers {
        None => dispatch(&cli.command, &mut emitter),
        Some(workers) => {
            if workers == 0 {
                return Err(Error::InvalidParams("--workers must be at least 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))?;
            pool.install(|| dispatch(&cli.command, &mut emitter))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match try_main(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        // Exit 2: the request was invalid. Exit 3: the request was legal but
        // over a compute/memory budget.
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_resource() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
