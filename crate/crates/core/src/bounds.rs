//! Analytic bounds on the limiting normalized LCS of `d` random k-ary
//! strings.
//!
//! Lower bounds come from the greedy matcher's coin process: one matched
//! symbol costs `E[Z] = d + 2 E[Y]` flips on average, so the binary rate is
//! at least `d / E[Z]`, and restricting a k-ary ensemble to its two most
//! convenient symbols scales that by `2/k`. Upper bounds come from a
//! first-moment count of common subsequences: the rate `x` is infeasible
//! once `f(x) = x + d (H_k(1 - x) - 1)` goes negative, giving both a
//! closed-form bound `(1 + 4 sqrt(ln k / d)) / k` (valid for
//! `d > 16 log2 k`) and a sharper bisection root for any `d >= 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::coins::{expected_flips, expected_minority_scan};
use crate::entropy::entropy_q;
use crate::error::{Error, Result};
use crate::rational::ratio_to_f64;
use crate::scalar::Real;

fn validate_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParams(format!("need k >= 2, got {k}")));
    }
    Ok(())
}

/// Exact greedy rate `d / E[Z]` as a rational.
pub fn lower_bound_binary_exact(d: u32) -> Result<BigRational> {
    let ez = expected_flips(d)?;
    Ok(BigRational::from(BigInt::from(d)) / ez)
}

/// Greedy lower bound for binary ensembles of `d` strings.
pub fn lower_bound_binary(d: u32) -> Result<f64> {
    Ok(ratio_to_f64(&lower_bound_binary_exact(d)?))
}

/// `d / E[Z]` for every `d` in `1..=max_d`, sharing one incremental scan.
pub fn lower_bound_binary_scan(max_d: u32) -> Result<Vec<f64>> {
    let eys = expected_minority_scan(max_d)?;
    Ok(eys
        .iter()
        .zip(1..)
        .map(|(ey, d)| {
            let ez = BigRational::from(BigInt::from(d)) + ey * BigRational::from(BigInt::from(2));
            ratio_to_f64(&(BigRational::from(BigInt::from(d)) / ez))
        })
        .collect())
}

/// Reduction of the binary bound to k symbols: restrict every string to two
/// fixed symbols (each kept with rate `2/k`) and match greedily there.
pub fn lower_bound_kary(k: u32, d: u32) -> Result<f64> {
    validate_k(k)?;
    Ok(2.0 / f64::from(k) * lower_bound_binary(d)?)
}

/// Slack term of the closed-form upper bound.
pub fn closed_form_epsilon(k: u32, d: u32) -> f64 {
    4.0 * (f64::from(k).ln() / f64::from(d)).sqrt()
}

/// The closed form is only a valid bound once `d > 16 log2 k`.
pub fn closed_form_valid(k: u32, d: u32) -> bool {
    k >= 2 && d >= 1 && f64::from(d) > 16.0 * f64::from(k).log2()
}

/// Closed-form upper bound `(1 + 4 sqrt(ln k / d)) / k`, or `None` outside
/// its validity region.
pub fn upper_bound_closed(k: u32, d: u32) -> Option<f64> {
    if !closed_form_valid(k, d) {
        return None;
    }
    Some((1.0 + closed_form_epsilon(k, d)) / f64::from(k))
}

/// First-moment exponent: negative once rate `x` is unachievable.
fn moment_exponent<R: Real>(x: R, k: u32, d: u32) -> R {
    let h = entropy_q(R::one() - x, k).expect("x in (1/k, 1] keeps 1 - x in [0, 1)");
    x + R::of_u32(d) * (h - R::one())
}

/// Bisection root of the first-moment exponent on `(1/k, 1]`: the sharpest
/// upper bound this counting argument yields. Returns the certified-negative
/// right endpoint, so the result errs upward by at most `tol`.
pub fn upper_bound_bisect<R: Real>(k: u32, d: u32, tol: R) -> Result<R> {
    validate_k(k)?;
    if d < 2 {
        return Err(Error::InvalidParams(format!(
            "counting bound needs d >= 2, got {d}"
        )));
    }
    if !tol.is_finite() || tol <= R::zero() {
        return Err(Error::InvalidParams("tolerance must be positive".into()));
    }
    let mut lo = R::one() / R::of_u32(k) + R::of_f64(1e-6);
    let mut hi = R::one();
    let at_lo = moment_exponent(lo, k, d);
    if !at_lo.is_finite() || at_lo <= R::zero() {
        return Err(Error::Bracket(format!(
            "exponent not positive just above 1/k for k = {k}, d = {d}"
        )));
    }
    let at_hi = moment_exponent(hi, k, d);
    if !at_hi.is_finite() || at_hi >= R::zero() {
        return Err(Error::Bracket(format!(
            "exponent not negative at 1 for k = {k}, d = {d}"
        )));
    }
    // The exponent is concave in x with a single sign change in the bracket.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) / R::of_f64(2.0);
        if moment_exponent(mid, k, d) < R::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// All bounds for one `(k, d)` cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub k: u32,
    pub d: u32,
    /// Greedy rate for the binary case, exact.
    #[serde(with = "crate::rational::serde_ratio")]
    pub lower_binary_exact: BigRational,
    pub lower_binary: f64,
    /// `(2/k) * lower_binary`; equals `lower_binary` at k = 2.
    pub lower_kary: f64,
    pub upper_bisect: f64,
    pub upper_closed: Option<f64>,
    pub epsilon: f64,
    pub closed_form_valid: bool,
}

pub fn bound_report(k: u32, d: u32, tol: f64) -> Result<BoundReport> {
    validate_k(k)?;
    let lower_binary_exact = lower_bound_binary_exact(d)?;
    let lower_binary = ratio_to_f64(&lower_binary_exact);
    let lower_kary = 2.0 / f64::from(k) * lower_binary;
    let upper_bisect = upper_bound_bisect(k, d, tol)?;
    let report = BoundReport {
        k,
        d,
        lower_binary_exact,
        lower_binary,
        lower_kary,
        upper_bisect,
        upper_closed: upper_bound_closed(k, d),
        epsilon: closed_form_epsilon(k, d),
        closed_form_valid: closed_form_valid(k, d),
    };
    // Internal consistency; a violation is a bug, not bad input.
    assert!(report.lower_binary > 0.0 && report.lower_binary <= 1.0);
    assert!(
        report.lower_kary <= report.upper_bisect + 1e-9,
        "bounds crossed at k={k} d={d}: {} > {}",
        report.lower_kary,
        report.upper_bisect
    );
    assert!(report.upper_bisect > 1.0 / f64::from(k) && report.upper_bisect <= 1.0);
    if let Some(closed) = report.upper_closed {
        assert!(
            report.upper_bisect <= closed + tol + 1e-9,
            "bisection above closed form at k={k} d={d}"
        );
    }
    Ok(report)
}

/// Bound grid in row-major order (k outer, d inner). Within each k the
/// bounds must tighten as `d` grows; that monotonicity is asserted.
pub fn bound_table(ks: &[u32], ds: &[u32], tol: f64) -> Result<Vec<BoundReport>> {
    if ks.is_empty() || ds.is_empty() {
        return Err(Error::InvalidParams("empty bound table request".into()));
    }
    let mut out = Vec::with_capacity(ks.len() * ds.len());
    for &k in ks {
        let mut prev: Option<BoundReport> = None;
        for &d in ds {
            let report = bound_report(k, d, tol)?;
            if let Some(p) = &prev {
                if d >= p.d {
                    assert!(
                        report.lower_binary_exact <= p.lower_binary_exact,
                        "greedy rate rose from d={} to d={}",
                        p.d,
                        d
                    );
                    assert!(
                        report.upper_bisect <= p.upper_bisect + 2.0 * tol + 1e-9,
                        "counting bound rose from d={} to d={}",
                        p.d,
                        d
                    );
                }
            }
            prev = Some(report.clone());
            out.push(report);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_lower_small_d() {
        // E[Z] is 3 at d=2 and 9/2 at d=3, so both rates are 2/3.
        assert!((lower_bound_binary(2).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((lower_bound_binary(3).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(lower_bound_binary(1).unwrap(), 1.0);
    }

    #[test]
    fn scan_agrees_with_direct() {
        let scan = lower_bound_binary_scan(300).unwrap();
        for d in [1u32, 2, 7, 64, 300] {
            let direct = lower_bound_binary(d).unwrap();
            assert!((scan[d as usize - 1] - direct).abs() < 1e-15, "d={d}");
        }
    }

    #[test]
    fn kary_reduction() {
        let b = lower_bound_binary(5).unwrap();
        assert!((lower_bound_kary(3, 5).unwrap() - 2.0 / 3.0 * b).abs() < 1e-15);
        assert!((lower_bound_kary(2, 5).unwrap() - b).abs() < 1e-15);
        assert!(lower_bound_kary(1, 5).is_err());
    }

    #[test]
    fn closed_form_values() {
        // (1 + 4 sqrt(ln 2 / 64)) / 2 and the k=4, d=100 analog.
        let u = upper_bound_closed(2, 64).unwrap();
        assert!((u - 0.708_138_652_789_424_4).abs() < 1e-12, "got {u}");
        let u = upper_bound_closed(4, 100).unwrap();
        assert!((u - 0.367_741_002_251_547_5).abs() < 1e-12, "got {u}");
        // Validity boundary at d = 16 log2 k is strict.
        assert!(upper_bound_closed(2, 16).is_none());
        assert!(upper_bound_closed(2, 17).is_some());
        assert!(upper_bound_closed(4, 32).is_none());
        assert!(upper_bound_closed(4, 33).is_some());
    }

    #[test]
    fn bisect_golden_values() {
        // Two-string binary root of x + 2 (H_2(1-x) - 1).
        let x = upper_bound_bisect(2u32, 2, 1e-9f64).unwrap();
        assert!((x - 0.866595).abs() < 1e-5, "got {x}");
        // Large d pushes the root toward 1/k from above.
        let x = upper_bound_bisect(2u32, 10_000, 1e-9f64).unwrap();
        assert!(x > 0.5 && x < 0.52, "got {x}");
        // f32 instantiation with a coarse tolerance.
        let x32 = upper_bound_bisect(2u32, 2, 1e-4f32).unwrap();
        assert!((f64::from(x32) - 0.8666).abs() < 1e-3);
    }

    #[test]
    fn bisect_validation() {
        assert!(upper_bound_bisect(2u32, 1, 1e-9f64).is_err());
        assert!(upper_bound_bisect(1u32, 4, 1e-9f64).is_err());
        assert!(upper_bound_bisect(2u32, 4, 0.0f64).is_err());
        assert!(upper_bound_bisect(2u32, 4, f64::NAN).is_err());
    }

    #[test]
    fn report_and_table_invariants() {
        let t = bound_table(&[2, 3, 5], &[2, 3, 8, 64, 200], 1e-9).unwrap();
        assert_eq!(t.len(), 15);
        for r in &t {
            assert!(r.lower_kary <= r.upper_bisect);
            if r.closed_form_valid {
                let c = r.upper_closed.unwrap();
                assert!(r.upper_bisect <= c + 1e-6);
            } else {
                assert!(r.upper_closed.is_none());
            }
        }
        // k = 2 row: the classical sandwich around the two-string constant.
        let r22 = &t[0];
        assert!((r22.lower_binary - 2.0 / 3.0).abs() < 1e-12);
        assert!((r22.upper_bisect - 0.8666).abs() < 1e-3);
    }

    #[test]
    fn scaled_deviation_bands() {
        // (lower - 1/2) sqrt(d) settles near sqrt(1/(2 pi)) / ... from above;
        // (upper_bisect - 1/2) sqrt(d) stays bounded. Spot-check mid-range d.
        let lows = lower_bound_binary_scan(1024).unwrap();
        for d in [16u32, 100, 512, 1024] {
            let lo = (lows[d as usize - 1] - 0.5) * f64::from(d).sqrt();
            assert!((0.15..=0.25).contains(&lo), "d={d} scaled lower {lo}");
            let up = upper_bound_bisect(2u32, d, 1e-9f64).unwrap();
            let us = (up - 0.5) * f64::from(d).sqrt();
            assert!(us > 0.0 && us <= 2.0, "d={d} scaled upper {us}");
        }
    }
}
