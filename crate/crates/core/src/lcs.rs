//! Exact longest-common-subsequence computations over string ensembles.
//!
//! The general kernel fills a flat (len+1)^d dynamic-programming table in
//! mixed-radix order. Two-string length-only queries take a rolling
//! two-row kernel instead. Every entry point budgets the table size up
//! front so runaway requests fail fast instead of thrashing.

use serde::{Deserialize, Serialize};

use crate::ensemble::StringEnsemble;
use crate::error::{Error, Result};
use crate::params::Symbol;
use crate::subseq::is_subsequence;

/// Cap on DP table cells (product of lengths-plus-one) for one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellBudget(pub u128);

impl Default for CellBudget {
    fn default() -> Self {
        CellBudget(100_000_000)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcsResult {
    pub length: usize,
    /// A longest common subsequence, when requested. Backtracking is
    /// deterministic: prefer dropping a symbol of the earliest string,
    /// take a matched symbol only when no drop preserves the length.
    pub witness: Option<Vec<Symbol>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalResult {
    pub budget: usize,
    /// Best LCS over prefix splits `(i_1, ..., i_d)` with sum = budget.
    pub value: usize,
    /// Lexicographically smallest split achieving `value`.
    pub split: Vec<usize>,
}

fn cells_of(views: &[&[Symbol]]) -> u128 {
    views.iter().map(|s| s.len() as u128 + 1).product()
}

fn check_cells(what: &'static str, views: &[&[Symbol]], budget: CellBudget) -> Result<()> {
    let required = cells_of(views);
    if required > budget.0 {
        return Err(Error::CellBudget {
            what,
            required,
            allowed: budget.0,
        });
    }
    Ok(())
}

/// Length-only two-string kernel, rolling rows. Retained as the plainly
/// correct reference for the bit-parallel kernel below.
#[cfg_attr(not(test), allow(dead_code))]
fn lcs2_len_basic(a: &[Symbol], b: &[Symbol]) -> usize {
    // Short string as the inner dimension keeps the rows cache-resident.
    let (inner, outer) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut prev = vec![0u32; inner.len() + 1];
    let mut cur = vec![0u32; inner.len() + 1];
    for &co in outer {
        for (i, &ci) in inner.iter().enumerate() {
            // Unequal-symbol diagonal is dominated by the drop moves, so the
            // max of all three is branchless and still correct.
            let diag = prev[i] + u32::from(ci == co);
            cur[i + 1] = diag.max(prev[i + 1]).max(cur[i]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[inner.len()] as usize
}

/// Per-symbol occurrence bitmasks of one string, 64 positions per word.
/// Bit `i` of row `c` is set when `s[i] == c`.
pub(crate) struct MatchMasks {
    words: usize,
    len: usize,
    rows: Vec<u64>,
    symbols: usize,
}

impl MatchMasks {
    pub(crate) fn new(s: &[Symbol]) -> Self {
        let words = s.len().div_ceil(64).max(1);
        let symbols = s.iter().map(|&c| usize::from(c) + 1).max().unwrap_or(1);
        let mut rows = vec![0u64; symbols * words];
        for (i, &c) in s.iter().enumerate() {
            rows[usize::from(c) * words + i / 64] |= 1 << (i % 64);
        }
        MatchMasks {
            words,
            len: s.len(),
            rows,
            symbols,
        }
    }

    fn row(&self, c: Symbol) -> Option<&[u64]> {
        let c = usize::from(c);
        (c < self.symbols).then(|| &self.rows[c * self.words..(c + 1) * self.words])
    }
}

/// One column step of the bit-parallel LCS recurrence. `v` holds the
/// row-difference bits of the DP column (bit `i` set when
/// `L[i+1][j] = L[i][j] + 1`); the update consumes, for each old step and
/// for the row origin, the lowest candidate (match or old step) above it:
/// `v' = x & ~(x - ((v << 1) | 1))` with `x = v | mask`.
fn bit_step(v: &mut [u64], mask: Option<&[u64]>) {
    let words = v.len();
    let mut carry = 1u64; // the "| 1" of the shifted subtrahend
    let mut borrow = 0u64;
    for w in 0..words {
        let x = match mask {
            Some(m) => v[w] | m[w],
            None => v[w],
        };
        let s = (v[w] << 1) | carry;
        carry = v[w] >> 63;
        let (d1, b1) = x.overflowing_sub(s);
        let (d2, b2) = d1.overflowing_sub(borrow);
        borrow = u64::from(b1) | u64::from(b2);
        v[w] = x & !d2;
    }
}

/// Count of set bits at positions below `limit`.
fn popcount_below(v: &[u64], limit: usize) -> usize {
    let full = limit / 64;
    let mut total: usize = v[..full].iter().map(|w| w.count_ones() as usize).sum();
    if !limit.is_multiple_of(64) {
        total += (v[full] & ((1u64 << (limit % 64)) - 1)).count_ones() as usize;
    }
    total
}

/// Bit-parallel two-string LCS length: 64 DP cells per word operation.
fn lcs2_len(a: &[Symbol], b: &[Symbol]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let masks = MatchMasks::new(a);
    lcs2_len_masks(&masks, b)
}

/// LCS length against a premasked string; lets callers that pit one string
/// against many amortize the mask construction.
pub(crate) fn lcs2_len_masks(masks: &MatchMasks, b: &[Symbol]) -> usize {
    let mut v = vec![0u64; masks.words];
    for &c in b {
        bit_step(&mut v, masks.row(c));
    }
    popcount_below(&v, masks.len)
}

struct Table {
    values: Vec<u32>,
    dims: Vec<usize>,
    strides: Vec<usize>,
}

/// Fill the full d-dimensional table. Cell (i_1..i_d) holds the LCS of the
/// prefixes of those lengths; any zero coordinate gives zero.
fn fill_table(views: &[&[Symbol]]) -> Table {
    let d = views.len();
    let dims: Vec<usize> = views.iter().map(|s| s.len() + 1).collect();
    let mut strides = vec![1usize; d];
    for j in (0..d.saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * dims[j + 1];
    }
    let diag_stride: usize = strides.iter().sum();
    let total: usize = dims.iter().product();
    let mut values = vec![0u32; total];
    let mut idx = vec![0usize; d];
    for lin in 0..total {
        if idx.iter().all(|&i| i > 0) {
            let sym = views[0][idx[0] - 1];
            let matched = views[1..]
                .iter()
                .zip(&idx[1..])
                .all(|(s, &i)| s[i - 1] == sym);
            let mut best = values[lin - diag_stride] + u32::from(matched);
            for &st in &strides {
                best = best.max(values[lin - st]);
            }
            values[lin] = best;
        }
        // Odometer increment, last coordinate fastest.
        for j in (0..d).rev() {
            idx[j] += 1;
            if idx[j] < dims[j] {
                break;
            }
            idx[j] = 0;
        }
    }
    Table {
        values,
        dims,
        strides,
    }
}

fn backtrack(table: &Table, views: &[&[Symbol]]) -> Vec<Symbol> {
    let mut idx: Vec<usize> = table.dims.iter().map(|&m| m - 1).collect();
    let mut lin = table.values.len() - 1;
    let mut out = Vec::with_capacity(table.values[lin] as usize);
    'walk: loop {
        let v = table.values[lin];
        if v == 0 {
            break;
        }
        for (i, &stride) in idx.iter_mut().zip(&table.strides) {
            if *i > 0 && table.values[lin - stride] == v {
                *i -= 1;
                lin -= stride;
                continue 'walk;
            }
        }
        // No drop preserves the value, so this cell extends a match and
        // every coordinate is positive with equal symbols.
        out.push(views[0][idx[0] - 1]);
        for (i, &stride) in idx.iter_mut().zip(&table.strides) {
            *i -= 1;
            lin -= stride;
        }
    }
    out.reverse();
    out
}

/// Length of the LCS of raw string views, for callers that manage their own
/// storage. `views` must be non-empty.
pub(crate) fn lcs_len_views(views: &[&[Symbol]], budget: CellBudget) -> Result<usize> {
    if views.is_empty() {
        return Err(Error::InvalidParams("need at least one string".into()));
    }
    check_cells("lcs table", views, budget)?;
    match views.len() {
        1 => Ok(views[0].len()),
        2 => Ok(lcs2_len(views[0], views[1])),
        _ => {
            let table = fill_table(views);
            Ok(*table.values.last().expect("non-empty table") as usize)
        }
    }
}

pub fn lcs_exact(ens: &StringEnsemble, witness: bool) -> Result<LcsResult> {
    lcs_exact_with(ens, witness, CellBudget::default())
}

pub fn lcs_exact_with(
    ens: &StringEnsemble,
    witness: bool,
    budget: CellBudget,
) -> Result<LcsResult> {
    let views: Vec<&[Symbol]> = ens.strings().iter().map(|s| s.as_slice()).collect();
    if !witness {
        return Ok(LcsResult {
            length: lcs_len_views(&views, budget)?,
            witness: None,
        });
    }
    check_cells("lcs table", &views, budget)?;
    if views.len() == 1 {
        return Ok(LcsResult {
            length: views[0].len(),
            witness: Some(views[0].to_vec()),
        });
    }
    let table = fill_table(&views);
    let length = *table.values.last().expect("non-empty table") as usize;
    let w = backtrack(&table, &views);
    debug_assert_eq!(w.len(), length);
    Ok(LcsResult {
        length,
        witness: Some(w),
    })
}

/// Reference implementation by direct search: enumerate subsequences of the
/// shortest string from longest down, return the first common one. Masks of
/// equal popcount are scanned in increasing numeric order, so the result is
/// deterministic.
pub fn lcs_bruteforce(ens: &StringEnsemble) -> Result<LcsResult> {
    let views: Vec<&[Symbol]> = ens.strings().iter().map(|s| s.as_slice()).collect();
    let (short_at, short) = views
        .iter()
        .enumerate()
        .min_by_key(|(_, s)| s.len())
        .ok_or_else(|| Error::InvalidParams("need at least one string".into()))?;
    let m = short.len();
    let space = (ens.k() as u128).saturating_pow(m as u32);
    if m > 14 || space > 10_000_000 {
        return Err(Error::ComputeBudget(format!(
            "brute force limited to shortest length <= 14 and k^length <= 1e7, \
             got length {m} with k = {}",
            ens.k()
        )));
    }
    let mut masks: Vec<u32> = (0..1u32 << m).collect();
    masks.sort_by_key(|&x| (std::cmp::Reverse(x.count_ones()), x));
    let mut buf = Vec::with_capacity(m);
    for mask in masks {
        buf.clear();
        for (i, &c) in short.iter().enumerate() {
            if mask >> i & 1 == 1 {
                buf.push(c);
            }
        }
        let common = views
            .iter()
            .enumerate()
            .all(|(j, s)| j == short_at || is_subsequence(&buf, s));
        if common {
            return Ok(LcsResult {
                length: buf.len(),
                witness: Some(buf),
            });
        }
    }
    unreachable!("the empty subsequence is always common");
}

pub fn diagonal_lcs(ens: &StringEnsemble, budget: usize) -> Result<DiagonalResult> {
    diagonal_lcs_with(ens, budget, CellBudget::default())
}

/// Maximize `LCS(x1[..i_1], ..., xd[..i_d])` over splits with
/// `i_1 + ... + i_d = budget`.
pub fn diagonal_lcs_with(
    ens: &StringEnsemble,
    budget: usize,
    cells: CellBudget,
) -> Result<DiagonalResult> {
    let views: Vec<&[Symbol]> = ens.strings().iter().map(|s| s.as_slice()).collect();
    let total_len: usize = views.iter().map(|s| s.len()).sum();
    if budget > total_len {
        return Err(Error::InvalidParams(format!(
            "split budget {budget} exceeds total length {total_len}"
        )));
    }
    check_cells("diagonal lcs table", &views, cells)?;
    if views.len() == 2 {
        return Ok(diagonal2(views[0], views[1], budget));
    }
    let table = fill_table(&views);
    let mut best = DiagonalResult {
        budget,
        value: 0,
        split: vec![0; views.len()],
    };
    let mut found = false;
    let mut split = vec![0usize; views.len()];
    scan_splits(&table, budget, 0, 0, &mut split, &mut best, &mut found);
    debug_assert!(found, "budget <= total length always admits a split");
    Ok(best)
}

/// Enumerate splits in lexicographic order, keeping the first maximum.
fn scan_splits(
    table: &Table,
    remaining: usize,
    j: usize,
    lin: usize,
    split: &mut Vec<usize>,
    best: &mut DiagonalResult,
    found: &mut bool,
) {
    let d = table.dims.len();
    if j == d {
        if remaining == 0 {
            let v = table.values[lin] as usize;
            if !*found || v > best.value {
                *found = true;
                best.value = v;
                best.split = split.clone();
            }
        }
        return;
    }
    let suffix_cap: usize = table.dims[j + 1..].iter().map(|&m| m - 1).sum();
    let lo = remaining.saturating_sub(suffix_cap);
    let hi = remaining.min(table.dims[j] - 1);
    for i in lo..=hi {
        split[j] = i;
        scan_splits(
            table,
            remaining - i,
            j + 1,
            lin + i * table.strides[j],
            split,
            best,
            found,
        );
    }
}

/// Two-string split maximization without materializing the full table:
/// after processing `j` symbols of `b`, the bit-parallel column encodes
/// `LCS(a[..i], b[..j])` for every `i`, and `i = budget - j` is the one
/// candidate on the split line. Scanning `j` upward visits splits in
/// descending first coordinate, so ties replace to end at the
/// lexicographically smallest split.
fn diagonal2(a: &[Symbol], b: &[Symbol], budget: usize) -> DiagonalResult {
    let masks = MatchMasks::new(a);
    let mut v = vec![0u64; masks.words];
    let mut best = DiagonalResult {
        budget,
        value: 0,
        split: vec![0, 0],
    };
    let mut found = false;
    let consider = |v: &[u64], j: usize, found: &mut bool, best: &mut DiagonalResult| {
        if j <= budget && budget - j <= a.len() {
            let i = budget - j;
            let val = popcount_below(v, i);
            if !*found || val >= best.value {
                *found = true;
                best.value = val;
                best.split = vec![i, j];
            }
        }
    };
    consider(&v, 0, &mut found, &mut best);
    for (j, &c) in b.iter().enumerate() {
        bit_step(&mut v, masks.row(c));
        consider(&v, j + 1, &mut found, &mut best);
    }
    debug_assert!(found);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Params;
    use crate::seed::Seed;

    fn ens(k: u32, strings: &[&str]) -> StringEnsemble {
        let vecs: Vec<Vec<Symbol>> = strings
            .iter()
            .map(|s| s.bytes().map(|b| b - b'0').collect())
            .collect();
        StringEnsemble::from_strings(k, vecs).unwrap()
    }

    #[test]
    fn two_string_golden() {
        let e = ens(2, &["0011", "0101"]);
        let r = lcs_exact(&e, true).unwrap();
        assert_eq!(r.length, 3);
        assert_eq!(r.witness, Some(vec![0, 0, 1]));
    }

    #[test]
    fn identical_and_disjoint() {
        let e = ens(2, &["0110", "0110"]);
        assert_eq!(lcs_exact(&e, false).unwrap().length, 4);
        let e = ens(2, &["0000", "1111"]);
        assert_eq!(lcs_exact(&e, false).unwrap().length, 0);
        assert_eq!(lcs_exact(&e, true).unwrap().witness, Some(vec![]));
    }

    #[test]
    fn three_string_case() {
        // No length-2 string is common to all three ("01" fails in 110,
        // "10" fails in 011, "00"/"11" fail too), so the LCS has length 1.
        let e = ens(2, &["010", "110", "011"]);
        let r = lcs_exact(&e, true).unwrap();
        let b = lcs_bruteforce(&e).unwrap();
        assert_eq!(r.length, 1);
        assert_eq!(r.length, b.length);
        let w = r.witness.unwrap();
        assert_eq!(w.len(), r.length);
        for s in e.strings() {
            assert!(is_subsequence(&w, s));
        }
    }

    #[test]
    fn single_string_is_itself() {
        let e = ens(3, &["0120"]);
        let r = lcs_exact(&e, true).unwrap();
        assert_eq!(r.length, 4);
        assert_eq!(r.witness, Some(vec![0, 1, 2, 0]));
    }

    #[test]
    fn empty_strings() {
        let e = StringEnsemble::from_strings(2, vec![vec![], vec![0, 1]]).unwrap();
        let r = lcs_exact(&e, true).unwrap();
        assert_eq!(r.length, 0);
        assert_eq!(r.witness, Some(vec![]));
    }

    #[test]
    fn witness_is_valid_on_random_ensembles() {
        for trial in 0..40 {
            let p = Params::new(3, 3, 6).unwrap();
            let e = crate::ensemble::sample_ensemble(
                &p,
                Seed {
                    master: 900 + trial,
                },
            )
            .unwrap();
            let r = lcs_exact(&e, true).unwrap();
            let w = r.witness.unwrap();
            assert_eq!(w.len(), r.length);
            for s in e.strings() {
                assert!(is_subsequence(&w, s));
            }
        }
    }

    #[test]
    fn matches_bruteforce_on_random_ensembles() {
        let mut cases = 0;
        for k in [2u32, 3] {
            for d in [2u32, 3] {
                for n in [4usize, 6, 7] {
                    for t in 0..10u64 {
                        let p = Params::new(k, d, n).unwrap();
                        let seed = Seed {
                            master: 7000 + t + 100 * u64::from(k * 10 + d) + n as u64,
                        };
                        let e = crate::ensemble::sample_ensemble(&p, seed).unwrap();
                        let dp = lcs_exact(&e, false).unwrap();
                        let bf = lcs_bruteforce(&e).unwrap();
                        assert_eq!(dp.length, bf.length, "k={k} d={d} n={n} t={t}");
                        cases += 1;
                    }
                }
            }
        }
        assert!(cases >= 100);
    }

    #[test]
    fn bitparallel_matches_basic_kernel() {
        use rand::Rng;
        let mut rng = Seed { master: 12321 }.rng();
        for &k in &[2u32, 3, 16] {
            for &(la, lb) in &[
                (0usize, 5usize),
                (1, 1),
                (63, 64),
                (64, 64),
                (65, 130),
                (128, 127),
                (300, 57),
            ] {
                for _ in 0..4 {
                    let a: Vec<Symbol> =
                        (0..la).map(|_| rng.random_range(0..k) as Symbol).collect();
                    let b: Vec<Symbol> =
                        (0..lb).map(|_| rng.random_range(0..k) as Symbol).collect();
                    assert_eq!(
                        lcs2_len(&a, &b),
                        lcs2_len_basic(&a, &b),
                        "k={k} la={la} lb={lb}"
                    );
                }
            }
        }
    }

    #[test]
    fn bruteforce_guard() {
        let p = Params::new(2, 2, 15).unwrap();
        let e = crate::ensemble::sample_ensemble(&p, Seed { master: 3 }).unwrap();
        assert!(matches!(lcs_bruteforce(&e), Err(Error::ComputeBudget(_))));
    }

    #[test]
    fn cell_budget_enforced() {
        let p = Params::new(2, 3, 2000).unwrap();
        let e = crate::ensemble::sample_ensemble(&p, Seed { master: 5 }).unwrap();
        match lcs_exact(&e, false) {
            Err(Error::CellBudget { required, .. }) => {
                assert_eq!(required, 2001u128.pow(3));
            }
            other => panic!("expected cell budget error, got {other:?}"),
        }
    }

    #[test]
    fn diagonal_examples() {
        let e = ens(2, &["0011", "0101"]);
        // budget 4: best split is not necessarily (2,2); check value directly.
        let r = diagonal_lcs(&e, 4).unwrap();
        assert_eq!(r.split.iter().sum::<usize>(), 4);
        // (2,2): LCS(00, 01) = 1; (1,3): LCS(0,010)=1; (3,1): LCS(001,0)=1;
        // (4,0)/(0,4): 0. So value 1.
        assert_eq!(r.value, 1);
        // Full budget equals the plain LCS.
        let full = diagonal_lcs(&e, 8).unwrap();
        assert_eq!(full.value, 3);
        assert_eq!(full.split, vec![4, 4]);
    }

    #[test]
    fn diagonal_matches_generic_scan() {
        // Cross-check the streaming two-string path against the generic
        // table scan by lifting to the (identical) recursive enumeration.
        let p = Params::new(2, 2, 9).unwrap();
        for t in 0..10 {
            let e = crate::ensemble::sample_ensemble(&p, Seed { master: 40 + t }).unwrap();
            for budget in 0..=18 {
                let fast = diagonal_lcs(&e, budget).unwrap();
                let table = fill_table(&[e.string(0), e.string(1)]);
                let mut best = DiagonalResult {
                    budget,
                    value: 0,
                    split: vec![0, 0],
                };
                let mut found = false;
                let mut split = vec![0usize; 2];
                scan_splits(&table, budget, 0, 0, &mut split, &mut best, &mut found);
                assert_eq!(fast, best, "budget {budget}");
            }
        }
    }

    #[test]
    fn diagonal_three_strings() {
        let e = ens(2, &["011", "110", "010"]);
        let total = 9;
        let full = diagonal_lcs(&e, total).unwrap();
        let plain = lcs_exact(&e, false).unwrap();
        assert_eq!(full.value, plain.length);
        assert!(diagonal_lcs(&e, total + 1).is_err());
        let zero = diagonal_lcs(&e, 0).unwrap();
        assert_eq!(zero.value, 0);
        assert_eq!(zero.split, vec![0, 0, 0]);
    }

    #[test]
    fn diagonal_monotone_in_budget() {
        let p = Params::new(2, 2, 12).unwrap();
        let e = crate::ensemble::sample_ensemble(&p, Seed { master: 77 }).unwrap();
        let mut last = 0;
        for budget in 0..=24 {
            let v = diagonal_lcs(&e, budget).unwrap().value;
            assert!(v >= last, "value dropped at budget {budget}");
            last = v;
        }
    }
}
