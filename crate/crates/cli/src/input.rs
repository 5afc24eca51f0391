//! Input plumbing: symbol strings from the command line, ensemble files,
//! integer grids, and seed resolution.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use csgamma::{sample_ensemble, Error, Params, Provenance, Result, Seed, StringEnsemble, Symbol};
use rand::Rng;
use serde::Serialize;

/// One base-36 character per symbol, so `0011` is the binary string 0,0,1,1
/// and `a` is symbol 10. Mirrors the ensemble file format.
pub fn parse_symbols(text: &str) -> Result<Vec<Symbol>> {
    text.chars()
        .map(|c| {
            c.to_digit(36)
                .map(|v| v as Symbol)
                .ok_or_else(|| Error::Parse(format!("symbol {c:?} is not base-36")))
        })
        .collect()
}

/// Comma-separated strings; empty input means no strings.
pub fn parse_string_list(text: &str) -> Result<Vec<Vec<Symbol>>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_symbols).collect()
}

pub fn render_symbols(symbols: &[Symbol]) -> String {
    symbols
        .iter()
        .map(|&s| char::from_digit(u32::from(s), 36).unwrap_or('?'))
        .collect()
}

/// Explicit strings from the command line; the alphabet size is the given
/// `k` or the smallest legal one covering every symbol.
pub fn ensemble_from_strings(text: &str, k: Option<u32>) -> Result<StringEnsemble> {
    let strings = parse_string_list(text)?;
    let k = match k {
        Some(k) => k,
        None => strings
            .iter()
            .flatten()
            .map(|&s| u32::from(s) + 1)
            .max()
            .unwrap_or(2)
            .max(2),
    };
    StringEnsemble::from_strings(k, strings)
}

pub fn ensemble_from_file(path: &Path) -> Result<StringEnsemble> {
    StringEnsemble::read_text(BufReader::new(File::open(path)?))
}

/// The explicit seed, or a fresh random one (echoed so the run can be
/// reproduced).
pub fn resolve_seed(flag: Option<u64>) -> Seed {
    match flag {
        Some(master) => Seed::new(master),
        None => {
            let master = rand::rng().random::<u64>();
            eprintln!("seed: {master} (chosen at random; pass --seed {master} to reproduce)");
            Seed::new(master)
        }
    }
}

/// Where a command's strings came from, with every parameter resolved;
/// flattened into each command's echoed config.
#[derive(Serialize)]
pub struct SourceConfig {
    pub source: &'static str,
    pub k: u32,
    pub d: usize,
    pub lengths: Vec<usize>,
    pub seed: Option<u64>,
}

/// The common `--strings | --input | --k --d --n [--seed]` trio.
pub struct SourceFlags<'a> {
    pub strings: Option<&'a str>,
    pub input: Option<&'a Path>,
    pub k: Option<u32>,
    pub d: Option<u32>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
}

pub fn resolve_source(flags: SourceFlags) -> Result<(StringEnsemble, SourceConfig)> {
    let (source, ens) = if let Some(text) = flags.strings {
        ("strings", ensemble_from_strings(text, flags.k)?)
    } else if let Some(path) = flags.input {
        ("file", ensemble_from_file(path)?)
    } else {
        let (k, d, n) = match (flags.k, flags.d, flags.n) {
            (Some(k), Some(d), Some(n)) => (k, d, n),
            _ => {
                return Err(Error::InvalidParams(
                    "need --strings, --input, or all of --k --d --n".into(),
                ))
            }
        };
        let seed = resolve_seed(flags.seed);
        ("sampled", sample_ensemble(&Params::new(k, d, n)?, seed)?)
    };
    let seed = match ens.provenance() {
        Provenance::Seeded(s) => Some(s.master),
        Provenance::Explicit => None,
    };
    let config = SourceConfig {
        source,
        k: ens.k(),
        d: ens.d(),
        lengths: ens.lengths(),
        seed,
    };
    Ok((ens, config))
}

/// `2,3,5` as a list or `2:14` as an inclusive range; empty means empty.
pub fn parse_grid(text: &str) -> Result<Vec<u32>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((lo, hi)) = text.split_once(':') {
        let lo: u32 = lo
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range start {lo:?}")))?;
        let hi: u32 = hi
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range end {hi:?}")))?;
        if lo > hi {
            return Err(Error::Parse(format!("empty range {text:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad grid entry {part:?}")))
        })
        .collect()
}

pub fn parse_float_list(text: &str) -> Result<Vec<f64>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {part:?}")))
        })
        .collect()
}
