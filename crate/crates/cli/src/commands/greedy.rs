use std::path::PathBuf;

use clap::{Args, ValueEnum};
use csgamma::{
    greedy_match_kary_seeded_with, greedy_match_kary_with, greedy_match_seeded_with,
    greedy_match_with, Error, GreedyOptions, GreedyResult, Params, Result, Symbol, TieBreak,
};
use serde::Serialize;

use crate::emit::{cell, Csv, Emitter};
use crate::input::{ensemble_from_file, ensemble_from_strings, render_symbols, resolve_seed};

/// Round-based majority matcher: reveal one next symbol per string, match on
/// the majority face, redraw the minority. For k > 2 it runs on the binary
/// filtrate of a chosen symbol pair.
#[derive(Args)]
pub struct GreedyArgs {
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
    /// Nominal per-string length; fixes the default budget for seeded runs
    /// (`n * d` revealed symbols, `2 n d / k` filtered ones when k > 2).
    #[arg(long)]
    pub n: Option<usize>,
    /// Master seed; random (and echoed) if omitted. Seeded runs draw symbols
    /// on demand, so the budget may exceed `n * d`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Budgeted symbols the matcher may reveal in total (filtered symbols
    /// when k > 2). Default: everything available.
    #[arg(long)]
    pub budget: Option<usize>,
    /// For k > 2: filter symbol mapped to 0.
    #[arg(long, default_value_t = 0)]
    pub a: Symbol,
    /// For k > 2: filter symbol mapped to 1.
    #[arg(long, default_value_t = 1)]
    pub b: Symbol,
    /// Majority face on even splits.
    #[arg(long, value_enum, default_value_t = Tie::Zero)]
    pub tie: Tie,
    /// Record per-round costs (printed in text mode, embedded in JSON).
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tie {
    Zero,
    One,
}

impl Tie {
    fn to_lib(self) -> TieBreak {
        match self {
            Tie::Zero => TieBreak::Zero,
            Tie::One => TieBreak::One,
        }
    }
}

#[derive(Serialize)]
struct Config {
    source: &'static str,
    k: u32,
    d: u32,
    n: Option<usize>,
    seed: Option<u64>,
    budget: usize,
    filter: Option<(Symbol, Symbol)>,
    tie: &'static str,
    trace: bool,
}

pub fn run(args: &GreedyArgs, emitter: &mut Emitter) -> Result<()> {
    let opts = GreedyOptions {
        tie_break: args.tie.to_lib(),
        trace: args.trace,
    };
    let explicit = match (&args.strings, &args.input) {
        (Some(text), _) => Some(("strings", ensemble_from_strings(text, args.k)?)),
        (None, Some(path)) => Some(("file", ensemble_from_file(path)?)),
        (None, None) => None,
    };

    let (config, report) = match explicit {
        Some((source, ens)) => {
            let k = ens.k();
            let filter = (k > 2).then_some((args.a, args.b));
            let budget = args.budget.unwrap_or_else(|| match filter {
                None => ens.lengths().iter().sum(),
                Some((a, b)) => ens
                    .strings()
                    .iter()
                    .flatten()
                    .filter(|&&s| s == a || s == b)
                    .count(),
            });
            let report = match filter {
                None => greedy_match_with(&ens, budget, &opts)?,
                Some((a, b)) => greedy_match_kary_with(&ens, budget, a, b, &opts)?,
            };
            let config = Config {
                source,
                k,
                d: ens.d() as u32,
                n: None,
                seed: None,
                budget,
                filter,
                tie: tie_name(args.tie),
                trace: args.trace,
            };
            (config, report)
        }
        None => {
            let (k, d, n) = match (args.k, args.d, args.n) {
                (Some(k), Some(d), Some(n)) => (k, d, n),
                _ => {
                    return Err(Error::InvalidParams(
                        "need --strings, --input, or all of --k --d --n".into(),
                    ))
                }
            };
            let params = Params::new(k, d, n)?;
            let seed = resolve_seed(args.seed);
            let filter = (k > 2).then_some((args.a, args.b));
            let budget = args.budget.unwrap_or(match filter {
                None => n * d as usize,
                Some(_) => 2 * n * d as usize / k as usize,
            });
            let report = match filter {
                None => greedy_match_seeded_with(&params, seed, budget, &opts)?,
                Some((a, b)) => greedy_match_kary_seeded_with(&params, seed, budget, a, b, &opts)?,
            };
            let config = Config {
                source: "sampled",
                k,
                d,
                n: Some(n),
                seed: Some(seed.master),
                budget,
                filter,
                tie: tie_name(args.tie),
                trace: args.trace,
            };
            (config, report)
        }
    };

    let text = render_text(&config, &report);
    let consumed = join(&report.consumed);
    let csv = Csv::one(
        "matched,sequence,consumed,total_bits,budget,exhausted",
        format!(
            "{},{},{},{},{},{}",
            report.matched.len(),
            render_symbols(&report.matched),
            consumed,
            report.total_bits,
            report.budget,
            report.exhausted
        ),
    );
    emitter.emit("greedy", &config, &report, text, csv)
}

fn render_text(config: &Config, report: &GreedyResult) -> String {
    let mut text = format!(
        "matched {}\nsequence {}\nconsumed {}\ntotal_bits {}/{}\nexhausted {}\n",
        report.matched.len(),
        render_symbols(&report.matched),
        join(&report.consumed),
        report.total_bits,
        report.budget,
        report.exhausted
    );
    if config.budget > 0 {
        let rate = report.matched.len() as f64 * f64::from(config.d) / config.budget as f64;
        text.push_str(&format!("rate {}\n", cell(rate)));
    }
    if let Some(trace) = &report.trace {
        for r in trace {
            text.push_str(&format!(
                "round {} majority {} minority {} cost {} cumulative {}\n",
                r.round, r.majority, r.minority, r.cost, r.cumulative
            ));
        }
    }
    text
}

fn tie_name(tie: Tie) -> &'static str {
    match tie {
        Tie::Zero => "zero",
        Tie::One => "one",
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
