//! Counting k-ary strings of length `n` that contain a fixed subsequence of
//! length `ell`.
//!
//! The count depends only on `ell`, not on which subsequence is fixed:
//! classify each superstring by the position `t` of the final symbol of the
//! canonical (leftmost) embedding. The prefix before `t` contributes
//! `C(t-1, ell-1)` ways to place the first `ell-1` embedded symbols times
//! `(k-1)^(t-ell)` fillers that must avoid the next embedded symbol, and the
//! `n-t` symbols after `t` are free.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn validate(ell: usize, n: usize, k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParams(format!(
            "alphabet size must be at least 2, got {k}"
        )));
    }
    if ell > n {
        return Err(Error::InvalidParams(format!(
            "subsequence length {ell} exceeds string length {n}"
        )));
    }
    Ok(())
}

/// Exact number of k-ary strings of length `n` with a fixed subsequence of
/// length `ell`: sum over t of `C(t-1, ell-1) * k^(n-t) * (k-1)^(t-ell)`.
///
/// `ell = 0` degenerates to all `k^n` strings.
pub fn count_supersequences_exact(ell: usize, n: usize, k: u32) -> Result<BigUint> {
    validate(ell, n, k)?;
    let k_big = BigUint::from(k);
    if ell == 0 {
        return Ok(k_big.pow(n as u32));
    }
    let km1 = BigUint::from(k - 1);
    // Incremental binomial: at position t the coefficient is C(t-1, ell-1).
    let mut binom = BigUint::one();
    let mut total = BigUint::zero();
    for t in ell..=n {
        if t > ell {
            // C(t-1, ell-1) = C(t-2, ell-1) * (t-1) / (t-ell)
            binom = binom * BigUint::from(t - 1) / BigUint::from(t - ell);
        }
        total += &binom * k_big.pow((n - t) as u32) * km1.pow((t - ell) as u32);
    }
    Ok(total)
}

/// Natural log of the closed-form over-count `n * C(n-1, ell-1) * (k-1)^(n-ell)`.
///
/// The summand of the exact count grows with `t` exactly while
/// `t <= k(ell-1)`, so `n` times the `t = n` summand dominates the whole sum
/// whenever `k(ell-1) >= n-1`. For `k = 2` that condition is equivalent to the
/// accepted domain `ell > n/k`; for `k >= 3` the domain admits a thin strip
/// near `ell = n/k` where the expression can undershoot the true count
/// (smallest case: `ell=1, n=2, k=3`, count 5 vs bound 4). Callers comparing
/// against exact counts at tiny `ell` should stay in the dominated region.
/// Evaluated in log space via `lgamma`; fine for `n` far beyond
/// exact-arithmetic reach.
pub fn count_supersequences_bound(ell: usize, n: usize, k: u32) -> Result<f64> {
    validate(ell, n, k)?;
    if ell * (k as usize) <= n {
        return Err(Error::Domain(format!(
            "log-space bound requires ell > n/k, got ell={ell}, n={n}, k={k}"
        )));
    }
    let ln_binom =
        libm::lgamma(n as f64) - libm::lgamma(ell as f64) - libm::lgamma((n - ell + 1) as f64);
    Ok((n as f64).ln() + ln_binom + (n - ell) as f64 * f64::from(k - 1).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::big_ln;

    /// Brute-force oracle: scan all k^n strings for the fixed subsequence
    /// 0,1,0,1,... (any fixed witness gives the same count).
    fn count_by_enumeration(ell: usize, n: usize, k: u32) -> u64 {
        let pattern: Vec<u8> = (0..ell).map(|i| (i % 2) as u8).collect();
        let mut count = 0u64;
        let total = (k as u64).pow(n as u32);
        for code in 0..total {
            let mut s = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                s.push((c % k as u64) as u8);
                c /= k as u64;
            }
            let mut it = s.iter();
            if pattern.iter().all(|&p| it.any(|&x| x == p)) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn pinned_small_cases() {
        // ell=1, n=2, k=2: "00","01","10" contain "0"; "11" does not.
        assert_eq!(count_supersequences_exact(1, 2, 2).unwrap(), 3u32.into());
        // ell=2, n=3, k=2 with subsequence "01": 001,011,010,101.
        assert_eq!(count_supersequences_exact(2, 3, 2).unwrap(), 4u32.into());
        // ell = n: only the string itself.
        assert_eq!(count_supersequences_exact(5, 5, 7).unwrap(), 1u32.into());
        // ell = 0: every string qualifies.
        assert_eq!(count_supersequences_exact(0, 4, 3).unwrap(), 81u32.into());
    }

    #[test]
    fn matches_enumeration() {
        for k in [2u32, 3] {
            for n in 0..=8usize {
                for ell in 0..=n {
                    let exact = count_supersequences_exact(ell, n, k).unwrap();
                    let brute = count_by_enumeration(ell, n, k);
                    assert_eq!(exact, brute.into(), "ell={ell} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn bound_dominates_exact_where_summands_increase() {
        // Dominance is guaranteed when k(ell-1) >= n-1; for k = 2 that region
        // coincides with the whole accepted domain ell > n/2.
        for k in [2u32, 3, 4, 5] {
            for n in 1..=12usize {
                for ell in 1..=n {
                    if ell * (k as usize) <= n {
                        assert!(count_supersequences_bound(ell, n, k).is_err());
                        continue;
                    }
                    if (k as usize) * (ell - 1) < n - 1 {
                        continue;
                    }
                    let exact = count_supersequences_exact(ell, n, k).unwrap();
                    let bound = count_supersequences_bound(ell, n, k).unwrap();
                    assert!(
                        big_ln(&exact) <= bound + 1e-9,
                        "ln exact {} > bound {} at ell={ell} n={n} k={k}",
                        big_ln(&exact),
                        bound
                    );
                }
            }
        }
    }

    #[test]
    fn bound_undershoots_in_the_thin_strip() {
        // ell=1, n=2, k=3 sits inside the accepted domain (1 > 2/3) but below
        // the dominated region (k(ell-1) = 0 < n-1 = 1): 5 ternary strings of
        // length 2 contain a fixed symbol, while the expression gives only
        // 2 * C(1,0) * 2^1 = 4. Pinned so the gap stays documented.
        assert_eq!(count_supersequences_exact(1, 2, 3).unwrap(), 5u32.into());
        let bound = count_supersequences_bound(1, 2, 3).unwrap();
        assert!((bound.exp() - 4.0).abs() < 1e-9);
        assert!(big_ln(&count_supersequences_exact(1, 2, 3).unwrap()) > bound);
    }

    #[test]
    fn bound_value_spotcheck() {
        // ell=2, n=2, k=2: bound is ln(2 * C(1,1) * 1) = ln 2; exact count 1.
        let b = count_supersequences_bound(2, 2, 2).unwrap();
        assert!((b - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(count_supersequences_exact(3, 2, 2).is_err());
        assert!(count_supersequences_exact(1, 2, 1).is_err());
        assert!(count_supersequences_bound(1, 4, 2).is_err()); // ell <= n/k
    }
}
