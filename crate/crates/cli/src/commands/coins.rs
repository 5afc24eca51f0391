use clap::Args;
use csgamma::{
    coin_analytics, simulate_coin_process, summarize_flips, summarize_minority, CoinAnalytics,
    Result,
};
use serde::Serialize;

use crate::emit::{cell, Csv, Emitter};
use crate::input::resolve_seed;

/// Exact analytics of the coin process (minority count Y, total flips Z)
/// and, with `--trials`, a seeded simulation cross-check.
#[derive(Args)]
pub struct CoinsArgs {
    /// Number of coins per round.
    #[arg(long)]
    pub d: u32,
    /// Simulated rounds; 0 means analytics only.
    #[arg(long, default_value_t = 0)]
    pub trials: u64,
    /// Master seed; random (and echoed) if omitted.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct Config {
    d: u32,
    trials: u64,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct Report {
    analytics: CoinAnalytics,
    simulation: Option<Simulation>,
}

#[derive(Serialize)]
struct Simulation {
    trials: u64,
    mean_minority: f64,
    se_minority: f64,
    mean_flips: f64,
    se_flips: f64,
}

pub fn run(args: &CoinsArgs, emitter: &mut Emitter) -> Result<()> {
    let analytics = coin_analytics(args.d)?;
    let (seed, simulation) = if args.trials > 0 {
        let seed = resolve_seed(args.seed);
        let rounds = simulate_coin_process(args.d, args.trials, seed)?;
        let (mean_flips, se_flips) = summarize_flips(&rounds);
        let (mean_minority, se_minority) = summarize_minority(&rounds);
        (
            Some(seed.master),
            Some(Simulation {
                trials: args.trials,
                mean_minority,
                se_minority,
                mean_flips,
                se_flips,
            }),
        )
    } else {
        (None, None)
    };

    let mut text = format!(
        "expected_minority {} = {}\nexpected_flips {} = {}\nc_hat {}\n",
        analytics.expected_minority,
        cell(analytics.expected_minority_f64),
        analytics.expected_flips,
        cell(analytics.expected_flips_f64),
        cell(analytics.c_hat)
    );
    if let Some(sim) = &simulation {
        text.push_str(&format!(
            "sim_minority {} se {}\nsim_flips {} se {}\n",
            cell(sim.mean_minority),
            cell(sim.se_minority),
            cell(sim.mean_flips),
            cell(sim.se_flips)
        ));
    }

    // `trials` doubles as the applicability flag for the simulation cells.
    let sim_cells = simulation.as_ref().map_or_else(
        || "0,0.0,0.0,0.0,0.0".to_string(),
        |s| {
            format!(
                "{},{},{},{},{}",
                s.trials,
                cell(s.mean_minority),
                cell(s.se_minority),
                cell(s.mean_flips),
                cell(s.se_flips)
            )
        },
    );
    let csv = Csv::one(
        "d,expected_minority,expected_flips,c_hat,trials,mean_minority,se_minority,mean_flips,se_flips",
        format!(
            "{},{},{},{},{sim_cells}",
            args.d,
            analytics.expected_minority,
            analytics.expected_flips,
            cell(analytics.c_hat)
        ),
    );
    let config = Config {
        d: args.d,
        trials: args.trials,
        seed,
    };
    let report = Report {
        analytics,
        simulation,
    };
    emitter.emit("coins", &config, &report, text, csv)
}
