use clap::Args;
use csgamma::{concentration_probe, estimate_gamma, Error, Params, Result};
use serde::Serialize;

use crate::commands::Method;
use crate::emit::{cell, Csv, Emitter};
use crate::input::resolve_seed;

/// Seeded Monte Carlo estimate of the normalized LCS (exact DP or greedy
/// rate), or — with `--eps` — an empirical concentration probe against the
/// martingale tail bound.
#[derive(Args)]
pub struct EstimateArgs {
    /// Alphabet size.
    #[arg(long)]
    pub k: u32,
    /// Number of strings.
    #[arg(long)]
    pub d: u32,
    /// Per-string length.
    #[arg(long)]
    pub n: usize,
    /// Independent trials.
    #[arg(long, default_value_t = 50)]
    pub trials: u64,
    /// Master seed; random (and echoed) if omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Per-trial estimator.
    #[arg(long, value_enum, default_value_t = Method::ExactDp)]
    pub method: Method,
    /// Concentration probe: report the fraction of trials farther than EPS
    /// from the pooled mean, against the tail bound 2 exp(-eps^2 n / 2).
    #[arg(long, value_name = "EPS")]
    pub eps: Option<f64>,
}

#[derive(Serialize)]
struct Config {
    k: u32,
    d: u32,
    n: usize,
    trials: u64,
    seed: u64,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
}

pub fn run(args: &EstimateArgs, emitter: &mut Emitter) -> Result<()> {
    let params = Params::new(args.k, args.d, args.n)?;
    let seed = resolve_seed(args.seed);
    match args.eps {
        None => {
            let report = estimate_gamma(&params, args.trials, seed, args.method.to_lib())?;
            let text = format!(
                "mean {}\nstddev {}\nci {} {}\n",
                cell(report.mean),
                cell(report.stddev),
                cell(report.ci_low),
                cell(report.ci_high)
            );
            let csv = Csv::one(
                "k,d,n,method,trials,seed,mean,stddev,ci_low,ci_high",
                format!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    args.k,
                    args.d,
                    args.n,
                    args.method.name(),
                    args.trials,
                    seed,
                    cell(report.mean),
                    cell(report.stddev),
                    cell(report.ci_low),
                    cell(report.ci_high)
                ),
            );
            let config = config_of(args, seed.master);
            emitter.emit("estimate", &config, &report, text, csv)
        }
        Some(eps) => {
            if args.method != Method::ExactDp {
                return Err(Error::InvalidParams(
                    "the concentration probe measures exact LCS values; \
                     drop --method greedy"
                        .into(),
                ));
            }
            let report = concentration_probe(&params, args.trials, seed, eps)?;
            let text = format!(
                "mean {}\nfar_fraction {}\ntail_bound {}\n",
                cell(report.mean),
                cell(report.far_fraction),
                cell(report.tail_bound)
            );
            let csv = Csv::one(
                "k,d,n,eps,trials,seed,mean,far_fraction,tail_bound",
                format!(
                    "{},{},{},{},{},{},{},{},{}",
                    args.k,
                    args.d,
                    args.n,
                    cell(eps),
                    args.trials,
                    seed,
                    cell(report.mean),
                    cell(report.far_fraction),
                    cell(report.tail_bound)
                ),
            );
            let config = config_of(args, seed.master);
            emitter.emit("estimate", &config, &report, text, csv)
        }
    }
}

fn config_of(args: &EstimateArgs, seed: u64) -> Config {
    Config {
        k: args.k,
        d: args.d,
        n: args.n,
        trials: args.trials,
        seed,
        method: args.method.name(),
        eps: args.eps,
    }
}
