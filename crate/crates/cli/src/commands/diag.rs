use std::path::PathBuf;

use clap::Args;
use csgamma::{diagonal_lcs, estimate_diagonal, Error, Params, Result};
use serde::Serialize;

use crate::emit::{cell, Csv, Emitter};
use crate::input::{resolve_seed, resolve_source, SourceConfig, SourceFlags};

/// Best LCS over prefix splits of a fixed total budget — single ensembles,
/// or a seeded Monte Carlo estimate of the normalized value with `--trials`.
#[derive(Args)]
pub struct DiagArgs {
    /// Comma-separated strings, one base-36 character per symbol.
    #[arg(long, value_name = "S1,S2,...")]
    pub strings: Option<String>,
    /// Ensemble file: header `k d n seed`, then one string per line.
    #[arg(long, value_name = "FILE", conflicts_with = "strings")]
    pub input: Option<PathBuf>,
    /// Alphabet size.
    #[arg(long)]
    pub k: Option<u32>,
    /// Number of strings.
    #[arg(long)]
    pub d: Option<u32>,
    /// Per-string sample length (Monte Carlo mode samples strings of length
    /// `budget` per trial so every split is feasible).
    #[arg(long)]
    pub n: Option<usize>,
    /// Master seed; random (and echoed) if omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Total prefix symbols to split across the strings
    /// (default: everything, i.e. the summed lengths, or `n * d` sampled).
    #[arg(long)]
    pub budget: Option<usize>,
    /// Estimate the mean normalized split value over this many trials.
    #[arg(long)]
    pub trials: Option<u64>,
}

#[derive(Serialize)]
struct SingleConfig {
    mode: &'static str,
    #[serde(flatten)]
    source: SourceConfig,
    budget: usize,
}

#[derive(Serialize)]
struct EstimateConfig {
    mode: &'static str,
    k: u32,
    d: u32,
    n: usize,
    budget: usize,
    trials: u64,
    seed: u64,
}

pub fn run(args: &DiagArgs, emitter: &mut Emitter) -> Result<()> {
    match args.trials {
        None => single(args, emitter),
        Some(trials) => estimate(args, trials, emitter),
    }
}

fn single(args: &DiagArgs, emitter: &mut Emitter) -> Result<()> {
    let (ens, source) = resolve_source(SourceFlags {
        strings: args.strings.as_deref(),
        input: args.input.as_deref(),
        k: args.k,
        d: args.d,
        n: args.n,
        seed: args.seed,
    })?;
    let budget = args.budget.unwrap_or_else(|| ens.lengths().iter().sum());
    let report = diagonal_lcs(&ens, budget)?;

    let split = report
        .split
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let text = format!("{}\nsplit {split}\n", report.value);
    let csv = Csv::one(
        "budget,value,split",
        format!("{},{},{split}", report.budget, report.value),
    );
    let config = SingleConfig {
        mode: "single",
        source,
        budget,
    };
    emitter.emit("diag", &config, &report, text, csv)
}

fn estimate(args: &DiagArgs, trials: u64, emitter: &mut Emitter) -> Result<()> {
    if args.strings.is_some() || args.input.is_some() {
        return Err(Error::InvalidParams(
            "--trials estimates over sampled ensembles; it cannot be combined \
             with --strings or --input"
                .into(),
        ));
    }
    let (k, d, n) = match (args.k, args.d, args.n) {
        (Some(k), Some(d), Some(n)) => (k, d, n),
        _ => {
            return Err(Error::InvalidParams(
                "--trials needs --k, --d, and --n".into(),
            ))
        }
    };
    let params = Params::new(k, d, n)?;
    let seed = resolve_seed(args.seed);
    let budget = args.budget.unwrap_or(n * d as usize);
    let report = estimate_diagonal(&params, budget, trials, seed)?;

    let text = format!(
        "mean {}\nstddev {}\nci {} {}\n",
        report.mean, report.stddev, report.ci_low, report.ci_high
    );
    let csv = Csv::one(
        "k,d,n,budget,trials,seed,mean,stddev,ci_low,ci_high",
        format!(
            "{k},{d},{n},{budget},{trials},{seed},{},{},{},{}",
            cell(report.mean),
            cell(report.stddev),
            cell(report.ci_low),
            cell(report.ci_high)
        ),
    );
    let config = EstimateConfig {
        mode: "estimate",
        k,
        d,
        n,
        budget,
        trials,
        seed: seed.master,
    };
    emitter.emit("diag", &config, &report, text, csv)
}
