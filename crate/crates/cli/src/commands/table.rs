use std::fs;
use std::path::PathBuf;

use clap::Args;
use csgamma::{bound_table, estimate_gamma, BoundReport, Error, Params, Result};
use serde::{Deserialize, Serialize};

use crate::commands::bounds::{bound_row, BOUND_HEADER};
use crate::commands::Method;
use crate::emit::{cell, Csv, Emitter};
use crate::input::{parse_grid, resolve_seed};

/// Bound table over a (k, d) grid, one CSV row per cell, optionally with
/// Monte Carlo estimate columns. Rows are ordered by grid index (k outer,
/// d inner), never by completion time.
#[derive(Args)]
pub struct TableArgs {
    /// Alphabet grid: a list `2,3` or an inclusive range `2:4`.
    #[arg(long = "k-grid", value_name = "GRID")]
    pub k_grid: Option<String>,
    /// String-count grid, same syntax.
    #[arg(long = "d-grid", value_name = "GRID")]
    pub d_grid: Option<String>,
    /// Bisection tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Append mc_mean, mc_ci_low, mc_ci_high columns (row r estimates with
    /// child seed r).
    #[arg(long = "with-mc")]
    pub with_mc: bool,
    /// Per-string length for the Monte Carlo columns.
    #[arg(long)]
    pub n: Option<usize>,
    /// Trials per Monte Carlo cell.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Master seed for the Monte Carlo columns; random (and echoed) if
    /// omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Estimator for the Monte Carlo columns.
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// TOML file (k, d, tol, with_mc, n, trials, seed, method); flags
    /// override file values.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

/// Grid axes in a TOML file: either explicit lists or `"lo:hi"` ranges.
#[derive(Deserialize)]
#[serde(untagged)]
enum GridSpec {
    List(Vec<u32>),
    Range(String),
}

impl GridSpec {
    fn resolve(&self) -> Result<Vec<u32>> {
        match self {
            GridSpec::List(v) => Ok(v.clone()),
            GridSpec::Range(text) => parse_grid(text),
        }
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct TableFile {
    k: Option<GridSpec>,
    d: Option<GridSpec>,
    tol: Option<f64>,
    with_mc: Option<bool>,
    n: Option<usize>,
    trials: Option<u64>,
    seed: Option<u64>,
    method: Option<String>,
}

#[derive(Serialize)]
struct Config {
    k: Vec<u32>,
    d: Vec<u32>,
    tol: f64,
    with_mc: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
}

#[derive(Serialize)]
struct Row {
    #[serde(flatten)]
    bounds: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_ci_high: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    rows: Vec<Row>,
}

pub fn run(args: &TableArgs, emitter: &mut Emitter) -> Result<()> {
    let file: TableFile = match &args.config {
        Some(path) => toml::from_str(&fs::read_to_string(path)?)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        None => TableFile::default(),
    };
    let ks = match (&args.k_grid, &file.k) {
        (Some(text), _) => parse_grid(text)?,
        (None, Some(spec)) => spec.resolve()?,
        (None, None) => vec![2],
    };
    let ds = match (&args.d_grid, &file.d) {
        (Some(text), _) => parse_grid(text)?,
        (None, Some(spec)) => spec.resolve()?,
        (None, None) => (2..=14).collect(),
    };
    let tol = args.tol.or(file.tol).unwrap_or(1e-9);
    let with_mc = args.with_mc || file.with_mc.unwrap_or(false);
    let method = match (&args.method, file.method.as_deref()) {
        (Some(m), _) => *m,
        (None, Some("exact-dp")) => Method::ExactDp,
        (None, Some("greedy")) => Method::Greedy,
        (None, Some(other)) => {
            return Err(Error::Parse(format!(
                "unknown method {other:?} in config file"
            )))
        }
        (None, None) => Method::ExactDp,
    };

    let reports = if ks.is_empty() || ds.is_empty() {
        Vec::new()
    } else {
        bound_table(&ks, &ds, tol)?
    };

    let (mc, n, trials, seed) = if with_mc {
        let n = args.n.or(file.n).unwrap_or(2000);
        let trials = args.trials.or(file.trials).unwrap_or(30);
        let seed = resolve_seed(args.seed.or(file.seed));
        let mut mc = Vec::with_capacity(reports.len());
        for (idx, r) in reports.iter().enumerate() {
            let params = Params::new(r.k, r.d, n)?;
            let est = estimate_gamma(&params, trials, seed.child(idx as u64), method.to_lib())?;
            mc.push(Some((est.mean, est.ci_low, est.ci_high)));
        }
        (mc, Some(n), Some(trials), Some(seed.master))
    } else {
        (vec![None; reports.len()], None, None, None)
    };

    let mut rows = Vec::with_capacity(reports.len());
    let mut csv_rows = Vec::with_capacity(reports.len());
    for (bounds, mc_cell) in reports.into_iter().zip(mc) {
        let base = bound_row(&bounds);
        match mc_cell {
            Some((mean, lo, hi)) => {
                csv_rows.push(format!("{base},{},{},{}", cell(mean), cell(lo), cell(hi)));
                rows.push(Row {
                    bounds,
                    mc_mean: Some(mean),
                    mc_ci_low: Some(lo),
                    mc_ci_high: Some(hi),
                });
            }
            None => {
                csv_rows.push(base);
                rows.push(Row {
                    bounds,
                    mc_mean: None,
                    mc_ci_low: None,
                    mc_ci_high: None,
                });
            }
        }
    }

    let header: &'static str = if with_mc { MC_HEADER } else { BOUND_HEADER };
    // The table is tabular in every format; text mode prints the CSV body.
    let mut text = format!("{header}\n");
    for row in &csv_rows {
        text.push_str(row);
        text.push('\n');
    }
    let csv = Csv {
        header,
        rows: csv_rows,
    };
    let config = Config {
        k: ks,
        d: ds,
        tol,
        with_mc,
        n,
        trials,
        seed,
        method: with_mc.then(|| method.name()),
    };
    emitter.emit("table", &config, &Report { rows }, text, csv)
}

const MC_HEADER: &str =
    "k,d,lower_binary_exact,lower_binary,lower_kary,upper_bisect,upper_closed,epsilon,closed_form_valid,mc_mean,mc_ci_low,mc_ci_high";
