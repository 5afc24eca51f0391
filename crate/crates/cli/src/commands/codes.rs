use std::fs;
use std::path::PathBuf;

use clap::Args;
use csgamma::{
    check_list_decodable, code_from_words, proposition_sweep, sample_code, Code, Error, Result,
};
use serde::{Deserialize, Serialize};

use crate::emit::{cell, Csv, Emitter};
use crate::input::{parse_float_list, parse_string_list, resolve_seed};

/// Deletion-code list-decodability: check one code against a deletion
/// fraction, or sweep random codes over a (size, p) grid.
#[derive(Args)]
pub struct CodesArgs {
    /// Explicit codewords, comma-separated base-36 strings.
    #[arg(long, value_name = "W1,W2,...")]
    pub strings: Option<String>,
    /// Alphabet size.
    #[arg(long)]
    pub k: Option<u32>,
    /// Codeword length.
    #[arg(long)]
    pub n: Option<usize>,
    /// Codewords to sample for a single check.
    #[arg(long, conflicts_with = "strings")]
    pub size: Option<usize>,
    /// Master seed; random (and echoed) if omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Deletion fraction for a single decodability check.
    #[arg(long)]
    pub p: Option<f64>,
    /// Subset size: decodable means every d codewords have LCS < (1-p)n.
    #[arg(long)]
    pub d: Option<u32>,
    /// Sweep mode: comma-separated code sizes.
    #[arg(long, value_name = "S1,S2,...")]
    pub sizes: Option<String>,
    /// Sweep mode: comma-separated deletion fractions.
    #[arg(long = "p-grid", value_name = "P1,P2,...")]
    pub p_grid: Option<String>,
    /// Random codes per (size) row of the sweep.
    #[arg(long)]
    pub trials: Option<u64>,
    /// TOML file with sweep keys (k, n, d, sizes, p_grid, trials, seed);
    /// flags override file values.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

/// Sweep parameters from a TOML file; every key optional so flags can fill
/// the gaps.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    k: Option<u32>,
    n: Option<usize>,
    d: Option<u32>,
    sizes: Option<Vec<usize>>,
    p_grid: Option<Vec<f64>>,
    trials: Option<u64>,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct SweepConfig {
    k: u32,
    n: usize,
    d: u32,
    sizes: Vec<usize>,
    p_grid: Vec<f64>,
    trials: u64,
    seed: u64,
}

#[derive(Serialize)]
struct CheckConfig {
    source: &'static str,
    k: u32,
    n: usize,
    size: usize,
    seed: Option<u64>,
    p: f64,
    d: u32,
}

pub fn run(args: &CodesArgs, emitter: &mut Emitter) -> Result<()> {
    let sweep_requested = args.sizes.is_some() || args.p_grid.is_some() || args.config.is_some();
    if sweep_requested {
        sweep(args, emitter)
    } else {
        check(args, emitter)
    }
}

fn check(args: &CodesArgs, emitter: &mut Emitter) -> Result<()> {
    let p = args
        .p
        .ok_or_else(|| Error::InvalidParams("a single check needs --p".into()))?;
    let d = args.d.unwrap_or(2);
    let (source, seed, code): (_, Option<u64>, Code) = match &args.strings {
        Some(text) => {
            let words = parse_string_list(text)?;
            let k = args.k.unwrap_or_else(|| {
                words
                    .iter()
                    .flatten()
                    .map(|&s| u32::from(s) + 1)
                    .max()
                    .unwrap_or(2)
                    .max(2)
            });
            ("strings", None, code_from_words(k, words)?)
        }
        None => {
            let (k, n, size) = match (args.k, args.n, args.size) {
                (Some(k), Some(n), Some(size)) => (k, n, size),
                _ => {
                    return Err(Error::InvalidParams(
                        "sampling a code needs --k, --n, and --size".into(),
                    ))
                }
            };
            let seed = resolve_seed(args.seed);
            ("sampled", Some(seed.master), sample_code(k, n, size, seed)?)
        }
    };
    let report = check_list_decodable(&code, p, d)?;

    let mut text = format!(
        "decodable {}\nthreshold {}\nsubsets {}\n",
        report.decodable, report.threshold, report.subsets_checked
    );
    if let Some(v) = &report.violation {
        text.push_str(&format!("violation {} lcs {}\n", join(&v.indices), v.lcs));
    }
    let (viol_cell, lcs_cell) = report.violation.as_ref().map_or_else(
        || ("-".into(), "-".into()),
        |v| (join(&v.indices), v.lcs.to_string()),
    );
    let csv = Csv::one(
        "p,d,threshold,decodable,violation,violation_lcs,subsets_checked",
        format!(
            "{},{d},{},{},{viol_cell},{lcs_cell},{}",
            cell(p),
            report.threshold,
            report.decodable,
            report.subsets_checked
        ),
    );
    let config = CheckConfig {
        source,
        k: code.k(),
        n: code.n(),
        size: code.size(),
        seed,
        p,
        d,
    };
    emitter.emit("codes", &config, &report, text, csv)
}

fn sweep(args: &CodesArgs, emitter: &mut Emitter) -> Result<()> {
    let file: SweepFile = match &args.config {
        Some(path) => toml::from_str(&fs::read_to_string(path)?)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        None => SweepFile::default(),
    };
    let k = args.k.or(file.k).ok_or_else(|| missing("k"))?;
    let n = args.n.or(file.n).ok_or_else(|| missing("n"))?;
    let d = args.d.or(file.d).unwrap_or(2);
    let sizes = match &args.sizes {
        Some(text) => parse_float_as_sizes(text)?,
        None => file.sizes.ok_or_else(|| missing("sizes"))?,
    };
    let p_grid = match &args.p_grid {
        Some(text) => parse_float_list(text)?,
        None => file.p_grid.ok_or_else(|| missing("p-grid"))?,
    };
    let trials = args.trials.or(file.trials).unwrap_or(20);
    let seed = resolve_seed(args.seed.or(file.seed));

    let rows = proposition_sweep(k, n, d, &sizes, &p_grid, trials, seed)?;

    let mut text = String::new();
    let mut csv_rows = Vec::with_capacity(rows.len());
    for r in &rows {
        text.push_str(&format!(
            "size {} p {} threshold {} fraction {}\n",
            r.size,
            cell(r.p),
            r.threshold,
            cell(r.decodable_fraction)
        ));
        csv_rows.push(format!(
            "{},{},{},{},{}",
            r.size,
            cell(r.p),
            r.threshold,
            r.trials,
            cell(r.decodable_fraction)
        ));
    }
    let csv = Csv {
        header: "size,p,threshold,trials,decodable_fraction",
        rows: csv_rows,
    };
    let config = SweepConfig {
        k,
        n,
        d,
        sizes,
        p_grid,
        trials,
        seed: seed.master,
    };
    let report = Rows { rows };
    emitter.emit("codes", &config, &report, text, csv)
}

#[derive(Serialize)]
struct Rows {
    rows: Vec<csgamma::SweepRow>,
}

fn parse_float_as_sizes(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad size {part:?}")))
        })
        .collect()
}

fn missing(key: &str) -> Error {
    Error::InvalidParams(format!("sweep needs --{key} (flag or config file)"))
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
