//! List-decodability of random codes against deletions.
//!
//! A length-n code is `(p, L)` list-decodable against deletions when no
//! received word (some `p n` symbols deleted) is consistent with more than
//! `L` codewords. A word of length `ceil((1-p) n)` consistent with `d = L+1`
//! codewords is exactly a common subsequence of all of them, so decodability
//! reduces to: every d-subset of codewords has LCS below the threshold.
//! Because the limiting normalized LCS of random strings concentrates, a
//! random code flips from non-decodable to decodable as `p` crosses
//! `1 - gamma`, which the sweep here makes visible at finite n.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensemble::Provenance;
use crate::error::{Error, Result};
use crate::lcs::{lcs2_len_masks, lcs_len_views, CellBudget, MatchMasks};
use crate::params::{Symbol, MAX_ALPHABET};
use crate::seed::Seed;

/// A set of distinct codewords of equal length over the alphabet `0..k`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Code {
    k: u32,
    n: usize,
    codewords: Vec<Vec<Symbol>>,
    provenance: Provenance,
}

impl Code {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn codewords(&self) -> &[Vec<Symbol>] {
        &self.codewords
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// Sample `size` distinct uniform codewords. Collisions are resampled from
/// the same stream, so the result is a deterministic function of the seed.
pub fn sample_code(k: u32, n: usize, size: usize, seed: Seed) -> Result<Code> {
    if !(2..=MAX_ALPHABET).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "alphabet size must be in 2..={MAX_ALPHABET}, got {k}"
        )));
    }
    if size == 0 {
        return Err(Error::InvalidParams(
            "a code needs at least one codeword".into(),
        ));
    }
    if let Some(space) = (k as u128).checked_pow(n as u32) {
        if size as u128 > space {
            return Err(Error::InvalidParams(format!(
                "cannot pick {size} distinct codewords from {space} strings"
            )));
        }
    }
    let mut rng = seed.rng();
    let dist = rand::distr::Uniform::new(0u32, k).expect("k >= 2");
    let mut seen = std::collections::HashSet::with_capacity(size);
    let mut codewords = Vec::with_capacity(size);
    // Distinctness by rejection; the attempt cap only trips when the
    // request is within a whisker of exhausting the whole space.
    let mut attempts = 0u64;
    let max_attempts = 64 * (size as u64 + 16);
    while codewords.len() < size {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::Exhausted(format!(
                "gave up sampling {size} distinct codewords after {attempts} draws"
            )));
        }
        let w: Vec<Symbol> = (0..n)
            .map(|_| rand::Rng::sample(&mut rng, dist) as Symbol)
            .collect();
        if seen.insert(w.clone()) {
            codewords.push(w);
        }
    }
    Ok(Code {
        k,
        n,
        codewords,
        provenance: Provenance::Seeded(seed),
    })
}

pub fn code_from_words(k: u32, codewords: Vec<Vec<Symbol>>) -> Result<Code> {
    if !(2..=MAX_ALPHABET).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "alphabet size must be in 2..={MAX_ALPHABET}, got {k}"
        )));
    }
    let n = codewords.first().map_or(0, |w| w.len());
    if codewords.is_empty() {
        return Err(Error::InvalidParams(
            "a code needs at least one codeword".into(),
        ));
    }
    for (i, w) in codewords.iter().enumerate() {
        if w.len() != n {
            return Err(Error::InvalidParams(format!(
                "codeword {i} has length {} but codeword 0 has {n}",
                w.len()
            )));
        }
        if let Some(&c) = w.iter().find(|&&c| u32::from(c) >= k) {
            return Err(Error::InvalidParams(format!(
                "codeword {i} contains symbol {c} outside alphabet 0..{k}"
            )));
        }
    }
    let mut sorted: Vec<&Vec<Symbol>> = codewords.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParams("codewords must be distinct".into()));
    }
    Ok(Code {
        k,
        n,
        codewords,
        provenance: Provenance::Explicit,
    })
}

/// Shortest received-word length after deleting a `p` fraction: a common
/// subsequence of this length among `d` codewords defeats `(p, d-1)`
/// decodability. The 1e-9 guard keeps exact multiples of `1/n` from being
/// rounded up by float noise.
pub fn deletion_threshold(p: f64, n: usize) -> Result<usize> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidParams(format!(
            "deletion fraction must lie in [0, 1), got {p}"
        )));
    }
    Ok(((1.0 - p) * n as f64 - 1e-9).ceil().max(0.0) as usize)
}

/// Compute guard for subset scans: subsets times DP cells per subset.
#[derive(Debug, Clone, Copy)]
pub struct ScanBudget {
    pub max_cells: u128,
}

impl Default for ScanBudget {
    fn default() -> Self {
        // One full size-32 pairwise scan at n = 2000 is ~2e9 cells.
        ScanBudget {
            max_cells: 2e10 as u128,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Codeword indices of the offending subset, ascending.
    pub indices: Vec<usize>,
    pub lcs: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecodeReport {
    pub p: f64,
    pub d: u32,
    pub threshold: usize,
    pub decodable: bool,
    /// First violating subset in lexicographic order, if any.
    pub violation: Option<Violation>,
    /// Subsets examined (all of them when decodable).
    pub subsets_checked: u64,
}

fn subset_count(size: usize, d: u32) -> u128 {
    let d = d as u128;
    let size = size as u128;
    if d > size {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..d {
        c = c * (size - i) / (i + 1);
    }
    c
}

fn check_scan_budget(code: &Code, d: u32, budget: &ScanBudget) -> Result<u128> {
    let subsets = subset_count(code.size(), d);
    let per_subset = (code.n as u128 + 1).saturating_pow(d);
    let total = subsets.saturating_mul(per_subset);
    if total > budget.max_cells {
        return Err(Error::ComputeBudget(format!(
            "scanning {subsets} subsets of {d} codewords needs ~{total} DP \
             cells, over the {} allowed",
            budget.max_cells
        )));
    }
    Ok(subsets)
}

/// Advance `idx` to the next d-combination of `0..size` in lex order.
fn next_combination(idx: &mut [usize], size: usize) -> bool {
    let d = idx.len();
    for j in (0..d).rev() {
        if idx[j] < size - d + j {
            idx[j] += 1;
            for jj in j + 1..d {
                idx[jj] = idx[jj - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn subset_lcs(code: &Code, masks: &[MatchMasks], idx: &[usize]) -> Result<usize> {
    if idx.len() == 2 {
        Ok(lcs2_len_masks(&masks[idx[0]], &code.codewords[idx[1]]))
    } else {
        let views: Vec<&[Symbol]> = idx.iter().map(|&i| code.codewords[i].as_slice()).collect();
        lcs_len_views(&views, CellBudget(u128::MAX))
    }
}

/// Is the code `(p, d-1)` list-decodable against deletions? Scans d-subsets
/// in lex order and stops at the first violation.
pub fn check_list_decodable(code: &Code, p: f64, d: u32) -> Result<DecodeReport> {
    check_list_decodable_with(code, p, d, &ScanBudget::default())
}

pub fn check_list_decodable_with(
    code: &Code,
    p: f64,
    d: u32,
    budget: &ScanBudget,
) -> Result<DecodeReport> {
    validate_subset_size(code, d)?;
    check_scan_budget(code, d, budget)?;
    let threshold = deletion_threshold(p, code.n)?;
    let masks = pair_masks(code, d);
    let mut idx: Vec<usize> = (0..d as usize).collect();
    let mut checked = 0u64;
    if (d as usize) <= code.size() {
        loop {
            checked += 1;
            let lcs = subset_lcs(code, &masks, &idx)?;
            if lcs >= threshold {
                return Ok(DecodeReport {
                    p,
                    d,
                    threshold,
                    decodable: false,
                    violation: Some(Violation {
                        indices: idx.clone(),
                        lcs,
                    }),
                    subsets_checked: checked,
                });
            }
            if !next_combination(&mut idx, code.size()) {
                break;
            }
        }
    } else {
        checked = 0;
    }
    Ok(DecodeReport {
        p,
        d,
        threshold,
        decodable: true,
        violation: None,
        subsets_checked: checked,
    })
}

/// Largest LCS over all d-subsets, with the first subset attaining it.
/// One scan answers decodability for every deletion fraction at once.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubsetScan {
    pub d: u32,
    /// None when the code has fewer than d codewords (no subsets at all).
    pub max_lcs: Option<usize>,
    pub argmax: Vec<usize>,
    pub subsets_checked: u64,
}

pub fn max_subset_lcs(code: &Code, d: u32) -> Result<SubsetScan> {
    max_subset_lcs_with(code, d, &ScanBudget::default())
}

pub fn max_subset_lcs_with(code: &Code, d: u32, budget: &ScanBudget) -> Result<SubsetScan> {
    validate_subset_size(code, d)?;
    check_scan_budget(code, d, budget)?;
    if (d as usize) > code.size() {
        return Ok(SubsetScan {
            d,
            max_lcs: None,
            argmax: Vec::new(),
            subsets_checked: 0,
        });
    }
    let masks = pair_masks(code, d);
    let mut idx: Vec<usize> = (0..d as usize).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut checked = 0u64;
    loop {
        checked += 1;
        let lcs = subset_lcs(code, &masks, &idx)?;
        if best.as_ref().is_none_or(|(b, _)| lcs > *b) {
            best = Some((lcs, idx.clone()));
        }
        if !next_combination(&mut idx, code.size()) {
            break;
        }
    }
    let (max_lcs, argmax) = best.expect("at least one subset");
    Ok(SubsetScan {
        d,
        max_lcs: Some(max_lcs),
        argmax,
        subsets_checked: checked,
    })
}

fn validate_subset_size(code: &Code, d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParams(format!(
            "list-decoding subsets need d >= 2, got {d}"
        )));
    }
    let _ = code;
    Ok(())
}

/// Pairwise scans reuse one set of match masks per codeword; subsets with
/// d >= 3 go through the generic table and need none.
fn pair_masks(code: &Code, d: u32) -> Vec<MatchMasks> {
    if d == 2 {
        code.codewords.iter().map(|w| MatchMasks::new(w)).collect()
    } else {
        Vec::new()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub size: usize,
    pub p: f64,
    pub threshold: usize,
    pub trials: u64,
    /// Fraction of sampled codes that were (p, d-1) list-decodable.
    pub decodable_fraction: f64,
}

/// For each code size and each deletion fraction, the fraction of `trials`
/// random codes that are `(p, d-1)` list-decodable. Trial `t` of size entry
/// `s` draws its code from `seed.child(s).child(t)`; one subset scan per
/// code answers the whole `p` grid.
pub fn proposition_sweep(
    k: u32,
    n: usize,
    d: u32,
    sizes: &[usize],
    ps: &[f64],
    trials: u64,
    seed: Seed,
) -> Result<Vec<SweepRow>> {
    if sizes.is_empty() || ps.is_empty() || trials == 0 {
        return Err(Error::InvalidParams(
            "sweep needs sizes, deletion fractions, and trials".into(),
        ));
    }
    for &p in ps {
        deletion_threshold(p, n)?;
    }
    let budget = ScanBudget::default();
    let mut rows = Vec::with_capacity(sizes.len() * ps.len());
    for (s_idx, &size) in sizes.iter().enumerate() {
        let size_seed = seed.child(s_idx as u64);
        let maxima: Vec<Option<usize>> = (0..trials)
            .into_par_iter()
            .map(|t| -> Result<Option<usize>> {
                let code = sample_code(k, n, size, size_seed.child(t))?;
                Ok(max_subset_lcs_with(&code, d, &budget)?.max_lcs)
            })
            .collect::<Result<_>>()?;
        for &p in ps {
            let threshold = deletion_threshold(p, n)?;
            let decodable = maxima
                .iter()
                .filter(|m| m.is_none_or(|v| v < threshold))
                .count();
            rows.push(SweepRow {
                size,
                p,
                threshold,
                trials,
                decodable_fraction: decodable as f64 / trials as f64,
            });
        }
    }
    Ok(rows)
}
