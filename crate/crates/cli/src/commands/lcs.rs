use std::path::PathBuf;

use clap::Args;
use csgamma::{lcs_exact, Result};
use serde::Serialize;

use crate::emit::{Csv, Emitter};
use crate::input::{render_symbols, resolve_source, SourceConfig, SourceFlags};

/// Exact LCS of explicit, file-loaded, or freshly sampled strings.
#[derive(Args)]
pub struct LcsArgs {
    /// Comma-separated strings, one base-36 character per symbol.
    #[arg(long, value_name = "S1,S2,...")]
    pub strings: Option<String>,
    /// Ensemble file: header `k d n seed`, then one string per line.
    #[arg(long, value_name = "FILE", conflicts_with = "strings")]
    pub input: Option<PathBuf>,
    /// Alphabet size (inferred for explicit strings).
    #[arg(long)]
    pub k: Option<u32>,
    /// Number of strings to sample.
    #[arg(long)]
    pub d: Option<u32>,
    /// Length of each sampled string.
    #[arg(long)]
    pub n: Option<usize>,
    /// Master seed for sampling; random (and echoed) if omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also reconstruct one optimal common subsequence.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Serialize)]
struct Config {
    #[serde(flatten)]
    source: SourceConfig,
    witness: bool,
}

pub fn run(args: &LcsArgs, emitter: &mut Emitter) -> Result<()> {
    let (ens, source) = resolve_source(SourceFlags {
        strings: args.strings.as_deref(),
        input: args.input.as_deref(),
        k: args.k,
        d: args.d,
        n: args.n,
        seed: args.seed,
    })?;
    let report = lcs_exact(&ens, args.witness)?;

    let mut text = format!("{}\n", report.length);
    if let Some(w) = &report.witness {
        text.push_str(&format!("witness {}\n", render_symbols(w)));
    }
    let witness_cell = report
        .witness
        .as_ref()
        .map_or_else(|| "-".to_string(), |w| render_symbols(w));
    let csv = Csv::one(
        "length,witness",
        format!("{},{witness_cell}", report.length),
    );
    let config = Config {
        source,
        witness: args.witness,
    };
    emitter.emit("lcs", &config, &report, text, csv)
}
