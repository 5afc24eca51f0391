//! Random string ensembles: deterministic sampling, explicit construction,
//! and the plain-text interchange format.

use std::io::{BufRead, Write};

use rand::distr::{Distribution, Uniform};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Params, Symbol};
use crate::seed::Seed;

/// Where an ensemble's strings came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Sampled from `seed`; string `j` is the prefix of the infinite stream
    /// keyed by `seed.child(j)`, so strings can be extended on demand.
    Seeded(Seed),
    /// Supplied by the caller; no generator backs the strings.
    Explicit,
}

/// An ordered collection of `d` k-ary strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringEnsemble {
    params: Params,
    strings: Vec<Vec<Symbol>>,
    provenance: Provenance,
}

/// Draws one uniform symbol of `[0, k)` at a time. Uniformity is exact:
/// the underlying sampler rejects the biased tail of the generator word
/// rather than taking a modulus.
pub(crate) struct SymbolGen {
    rng: ChaCha8Rng,
    dist: Uniform<u16>,
}

impl SymbolGen {
    /// The stream for string `j` of an ensemble seeded by `seed`.
    pub(crate) fn for_string(seed: Seed, j: u64, k: u32) -> Self {
        debug_assert!((2..=256).contains(&k));
        SymbolGen {
            rng: seed.child(j).rng(),
            dist: Uniform::new(0u16, k as u16).expect("k >= 2 gives a nonempty range"),
        }
    }

    pub(crate) fn next_symbol(&mut self) -> Symbol {
        self.dist.sample(&mut self.rng) as Symbol
    }
}

/// Sample `d` independent uniformly random strings of length `n` over
/// `[0, k)`. A pure function of `(params, seed)`: repeated calls are
/// byte-identical.
pub fn sample_ensemble(params: &Params, seed: Seed) -> Result<StringEnsemble> {
    // Params::new re-validates in case the struct was built by hand.
    let params = Params::new(params.k, params.d, params.n)?;
    let strings = (0..params.d as u64)
        .map(|j| {
            let mut gen = SymbolGen::for_string(seed, j, params.k);
            (0..params.n).map(|_| gen.next_symbol()).collect()
        })
        .collect();
    Ok(StringEnsemble {
        params,
        strings,
        provenance: Provenance::Seeded(seed),
    })
}

impl StringEnsemble {
    /// Build an ensemble from explicit strings. Lengths may differ; `params.n`
    /// records the longest. Every symbol must lie in `[0, k)`.
    pub fn from_strings(k: u32, strings: Vec<Vec<Symbol>>) -> Result<Self> {
        let d = strings.len() as u32;
        let n = strings.iter().map(Vec::len).max().unwrap_or(0);
        let params = Params::new(k, d, n)?;
        for (j, s) in strings.iter().enumerate() {
            if let Some(&bad) = s.iter().find(|&&c| c as u32 >= k) {
                return Err(Error::InvalidParams(format!(
                    "string {j} contains symbol {bad}, outside the alphabet [0, {k})"
                )));
            }
        }
        Ok(StringEnsemble {
            params,
            strings,
            provenance: Provenance::Explicit,
        })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn k(&self) -> u32 {
        self.params.k
    }

    pub fn d(&self) -> usize {
        self.strings.len()
    }

    pub fn strings(&self) -> &[Vec<Symbol>] {
        &self.strings
    }

    pub fn string(&self, j: usize) -> &[Symbol] {
        &self.strings[j]
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.strings.iter().map(Vec::len).collect()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Plain-text format: header `k d n seed` (seed is the master integer or
    /// the word `explicit`), then one string per line with symbols written as
    /// base-36 digits. Only alphabets up to k = 36 fit this encoding.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        if self.params.k > 36 {
            return Err(Error::Domain(format!(
                "text format encodes symbols as base-36 digits; k={} is too large",
                self.params.k
            )));
        }
        let seed_field = match self.provenance {
            Provenance::Seeded(s) => s.to_string(),
            Provenance::Explicit => "explicit".to_string(),
        };
        writeln!(
            w,
            "{} {} {} {}",
            self.params.k, self.params.d, self.params.n, seed_field
        )?;
        for s in &self.strings {
            let line: String = s
                .iter()
                .map(|&c| std::char::from_digit(c as u32, 36).unwrap())
                .collect();
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty ensemble file".into()))??;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!(
                "header must be `k d n seed`, got `{header}`"
            )));
        }
        let k: u32 = fields[0]
            .parse()
            .map_err(|e| Error::Parse(format!("bad k: {e}")))?;
        let d: u32 = fields[1]
            .parse()
            .map_err(|e| Error::Parse(format!("bad d: {e}")))?;
        let n: usize = fields[2]
            .parse()
            .map_err(|e| Error::Parse(format!("bad n: {e}")))?;
        let provenance = if fields[3] == "explicit" {
            Provenance::Explicit
        } else {
            Provenance::Seeded(
                fields[3]
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad seed: {e}")))?,
            )
        };
        let mut strings = Vec::with_capacity(d as usize);
        for j in 0..d {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {d} strings, found {j}")))??;
            let mut s = Vec::with_capacity(n);
            for ch in line.trim().chars() {
                let v = ch
                    .to_digit(36)
                    .ok_or_else(|| Error::Parse(format!("`{ch}` is not a base-36 digit")))?;
                if v >= k {
                    return Err(Error::Parse(format!(
                        "symbol {v} outside alphabet [0, {k})"
                    )));
                }
                s.push(v as Symbol);
            }
            strings.push(s);
        }
        let params = Params::new(k, d, n)?;
        Ok(StringEnsemble {
            params,
            strings,
            provenance,
        })
    }
}
