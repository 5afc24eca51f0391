use clap::Args;
use csgamma::{bound_report, BoundReport, Result};
use serde::Serialize;

use crate::emit::{cell, Csv, Emitter};

/// All analytic bounds for one (k, d): the exact greedy lower bound, its
/// k-ary reduction, the bisection counting bound, and the closed form.
#[derive(Args)]
pub struct BoundsArgs {
    /// Alphabet size.
    #[arg(long)]
    pub k: u32,
    /// Number of strings.
    #[arg(long)]
    pub d: u32,
    /// Bisection tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Serialize)]
struct Config {
    k: u32,
    d: u32,
    tol: f64,
}

pub fn run(args: &BoundsArgs, emitter: &mut Emitter) -> Result<()> {
    let report = bound_report(args.k, args.d, args.tol)?;
    let text = render_text(&report);
    let csv = Csv::one(BOUND_HEADER, bound_row(&report));
    let config = Config {
        k: args.k,
        d: args.d,
        tol: args.tol,
    };
    emitter.emit("bounds", &config, &report, text, csv)
}

pub const BOUND_HEADER: &str =
    "k,d,lower_binary_exact,lower_binary,lower_kary,upper_bisect,upper_closed,epsilon,closed_form_valid";

/// One CSV row per report. The closed form may not apply (it needs
/// d > 16 log2 k); the cell then carries the trivial bound 1.0 and the
/// `closed_form_valid` flag is false, keeping every cell finite.
pub fn bound_row(r: &BoundReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.k,
        r.d,
        r.lower_binary_exact,
        cell(r.lower_binary),
        cell(r.lower_kary),
        cell(r.upper_bisect),
        cell(r.upper_closed.unwrap_or(1.0)),
        cell(r.epsilon),
        r.closed_form_valid
    )
}

fn render_text(r: &BoundReport) -> String {
    let closed = match r.upper_closed {
        Some(v) => cell(v),
        None => "none (needs d > 16 log2 k)".to_string(),
    };
    format!(
        "lower_binary {} = {}\nlower_kary {}\nupper_bisect {}\nupper_closed {closed}\n",
        r.lower_binary_exact,
        cell(r.lower_binary),
        cell(r.lower_kary),
        cell(r.upper_bisect)
    )
}
