//! Round-based greedy common-subsequence matcher.
//!
//! Each round reveals the next unread binary symbol of every string, takes
//! the majority face `b` (ties to 0 by default), then advances each minority
//! string until it too reveals `b`. The round's reveals all count against a
//! total budget; a round that would overshoot is discarded wholesale and the
//! run stops. Matched symbols form a common subsequence of the consumed
//! prefixes, which is what ties the matcher's rate to the coin process.
//!
//! Sources are either explicit strings or seeded generators. Generator
//! sources draw from the same per-string substreams as ensemble sampling, so
//! a seeded run never exhausts and agrees with a materialized run on any
//! prefix. The k-ary variant filters each stream down to two chosen symbols
//! first; its budget counts filtered symbols, while per-string consumption
//! is still reported in original positions.

use serde::{Deserialize, Serialize};

use crate::ensemble::{Provenance, StringEnsemble, SymbolGen};
use crate::error::{Error, Result};
use crate::params::{Params, Symbol};
use crate::seed::Seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TieBreak {
    #[default]
    Zero,
    One,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyOptions {
    pub tie_break: TieBreak,
    /// Record one `RoundTrace` per committed round.
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    /// 1-based round number.
    pub round: usize,
    pub majority: u8,
    /// Strings that disagreed with the majority this round.
    pub minority: u32,
    /// Budgeted symbols revealed this round.
    pub cost: usize,
    /// Budget consumed through this round.
    pub cumulative: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyResult {
    /// Matched majority symbols, a common subsequence of the consumed
    /// prefixes (over {0,1} even for filtered runs).
    pub matched: Vec<Symbol>,
    /// Original symbols consumed per string, counting only committed rounds.
    pub consumed: Vec<usize>,
    /// Budgeted (post-filter) symbols consumed per string.
    pub bits_consumed: Vec<usize>,
    /// Total budget used; at most `budget`.
    pub total_bits: usize,
    pub budget: usize,
    /// True when a finite string ran dry mid-round.
    pub exhausted: bool,
    pub trace: Option<Vec<RoundTrace>>,
}

impl GreedyResult {
    pub fn rounds(&self) -> usize {
        self.matched.len()
    }

    pub fn total_consumed(&self) -> usize {
        self.consumed.iter().sum()
    }
}

enum Stream<'a> {
    Slice(&'a [Symbol]),
    Gen(Box<SymbolGen>),
}

struct Source<'a> {
    stream: Stream<'a>,
    /// Maps two original symbols to 0/1 and skips the rest.
    filter: Option<(Symbol, Symbol)>,
    /// Original symbols consumed.
    orig: usize,
    /// Binary symbols delivered.
    bits: usize,
}

impl Source<'_> {
    fn next_bit(&mut self) -> Option<u8> {
        loop {
            let c = match &mut self.stream {
                Stream::Slice(s) => {
                    let c = *s.get(self.orig)?;
                    self.orig += 1;
                    c
                }
                Stream::Gen(g) => {
                    self.orig += 1;
                    g.next_symbol()
                }
            };
            match self.filter {
                None => {
                    self.bits += 1;
                    return Some(c);
                }
                Some((a, _)) if c == a => {
                    self.bits += 1;
                    return Some(0);
                }
                Some((_, b)) if c == b => {
                    self.bits += 1;
                    return Some(1);
                }
                Some(_) => {}
            }
        }
    }
}

fn run(mut sources: Vec<Source<'_>>, budget: usize, opts: &GreedyOptions) -> GreedyResult {
    let d = sources.len();
    let mut matched = Vec::new();
    let mut committed: Vec<(usize, usize)> = vec![(0, 0); d];
    let mut total_bits = 0usize;
    let mut exhausted = false;
    let mut trace = opts.trace.then(Vec::new);
    let mut faces = vec![0u8; d];

    'rounds: loop {
        let bits_before: usize = sources.iter().map(|s| s.bits).sum();
        for (j, src) in sources.iter_mut().enumerate() {
            match src.next_bit() {
                Some(b) => faces[j] = b,
                None => {
                    exhausted = true;
                    break 'rounds;
                }
            }
        }
        let ones = faces.iter().filter(|&&b| b == 1).count();
        let majority: u8 = if 2 * ones > d {
            1
        } else if 2 * ones < d {
            0
        } else {
            match opts.tie_break {
                TieBreak::Zero => 0,
                TieBreak::One => 1,
            }
        };
        let mut minority = 0u32;
        for (j, src) in sources.iter_mut().enumerate() {
            if faces[j] == majority {
                continue;
            }
            minority += 1;
            loop {
                match src.next_bit() {
                    Some(b) if b == majority => break,
                    Some(_) => {}
                    None => {
                        exhausted = true;
                        break 'rounds;
                    }
                }
            }
        }
        let cost = sources.iter().map(|s| s.bits).sum::<usize>() - bits_before;
        if total_bits + cost > budget {
            // Over-budget round is discarded whole; committed state stands.
            break;
        }
        total_bits += cost;
        for (j, src) in sources.iter().enumerate() {
            committed[j] = (src.orig, src.bits);
        }
        matched.push(majority);
        if let Some(t) = trace.as_mut() {
            t.push(RoundTrace {
                round: matched.len(),
                majority,
                minority,
                cost,
                cumulative: total_bits,
            });
        }
    }

    GreedyResult {
        matched,
        consumed: committed.iter().map(|&(o, _)| o).collect(),
        bits_consumed: committed.iter().map(|&(_, b)| b).collect(),
        total_bits,
        budget,
        exhausted,
        trace,
    }
}

fn sources_for<'a>(ens: &'a StringEnsemble, filter: Option<(Symbol, Symbol)>) -> Vec<Source<'a>> {
    (0..ens.d())
        .map(|j| {
            let stream = match ens.provenance() {
                Provenance::Seeded(seed) => {
                    Stream::Gen(Box::new(SymbolGen::for_string(seed, j as u64, ens.k())))
                }
                Provenance::Explicit => Stream::Slice(ens.string(j)),
            };
            Source {
                stream,
                filter,
                orig: 0,
                bits: 0,
            }
        })
        .collect()
}

/// Greedy matcher over a binary ensemble. Seeded ensembles are matched from
/// their generator streams and extend on demand past the sampled length.
pub fn greedy_match(ens: &StringEnsemble, budget: usize) -> Result<GreedyResult> {
    greedy_match_with(ens, budget, &GreedyOptions::default())
}

pub fn greedy_match_with(
    ens: &StringEnsemble,
    budget: usize,
    opts: &GreedyOptions,
) -> Result<GreedyResult> {
    if ens.k() != 2 {
        return Err(Error::Domain(format!(
            "greedy matching works on binary strings; k = {} needs the \
             filtered variant",
            ens.k()
        )));
    }
    Ok(run(sources_for(ens, None), budget, opts))
}

/// Greedy matcher on the binary filtrate of a k-ary ensemble: occurrences of
/// `a` become 0, occurrences of `b` become 1, everything else is skipped.
/// The budget counts filtered symbols.
pub fn greedy_match_kary(
    ens: &StringEnsemble,
    budget: usize,
    a: Symbol,
    b: Symbol,
) -> Result<GreedyResult> {
    greedy_match_kary_with(ens, budget, a, b, &GreedyOptions::default())
}

pub fn greedy_match_kary_with(
    ens: &StringEnsemble,
    budget: usize,
    a: Symbol,
    b: Symbol,
    opts: &GreedyOptions,
) -> Result<GreedyResult> {
    check_filter_pair(ens.k(), a, b)?;
    Ok(run(sources_for(ens, Some((a, b))), budget, opts))
}

/// Seeded run without materializing an ensemble; equivalent to sampling with
/// the same seed (at any length) and matching.
pub fn greedy_match_seeded(params: &Params, seed: Seed, budget: usize) -> Result<GreedyResult> {
    greedy_match_seeded_with(params, seed, budget, &GreedyOptions::default())
}

pub fn greedy_match_seeded_with(
    params: &Params,
    seed: Seed,
    budget: usize,
    opts: &GreedyOptions,
) -> Result<GreedyResult> {
    if params.k != 2 {
        return Err(Error::Domain(format!(
            "greedy matching works on binary strings; k = {} needs the \
             filtered variant",
            params.k
        )));
    }
    Ok(run(seeded_sources(params, seed, None), budget, opts))
}

pub fn greedy_match_kary_seeded(
    params: &Params,
    seed: Seed,
    budget: usize,
    a: Symbol,
    b: Symbol,
) -> Result<GreedyResult> {
    greedy_match_kary_seeded_with(params, seed, budget, a, b, &GreedyOptions::default())
}

pub fn greedy_match_kary_seeded_with(
    params: &Params,
    seed: Seed,
    budget: usize,
    a: Symbol,
    b: Symbol,
    opts: &GreedyOptions,
) -> Result<GreedyResult> {
    check_filter_pair(params.k, a, b)?;
    Ok(run(
        seeded_sources(params, seed, Some((a, b))),
        budget,
        opts,
    ))
}

fn check_filter_pair(k: u32, a: Symbol, b: Symbol) -> Result<()> {
    if a == b || u32::from(a) >= k || u32::from(b) >= k {
        return Err(Error::Domain(format!(
            "filter symbols must be distinct and below k = {k}, got ({a}, {b})"
        )));
    }
    Ok(())
}

fn seeded_sources(
    params: &Params,
    seed: Seed,
    filter: Option<(Symbol, Symbol)>,
) -> Vec<Source<'static>> {
    (0..u64::from(params.d))
        .map(|j| Source {
            stream: Stream::Gen(Box::new(SymbolGen::for_string(seed, j, params.k))),
            filter,
            orig: 0,
            bits: 0,
        })
        .collect()
}
