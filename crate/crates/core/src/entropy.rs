//! q-ary entropy and the two estimates the upper bounds lean on.
//!
//! Verification predicates return `true` when the inequality holds up to a
//! 1e-9 comparison margin. The margin exists to keep rounding from flipping
//! a verdict at exact-equality endpoints; genuine gaps in the tested domain
//! are orders of magnitude wider.

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::big_ln;
use crate::scalar::Real;

const MARGIN: f64 = 1e-9;

/// q-ary entropy `H_q(p) = p log_q(q-1) - p log_q p - (1-p) log_q(1-p)`,
/// with the usual `0 log 0 = 0` convention.
pub fn entropy_q<R: Real>(p: R, q: u32) -> Result<R> {
    if q < 2 {
        return Err(Error::Domain(format!("entropy base must be >= 2, got {q}")));
    }
    if !(p >= R::zero() && p <= R::one()) {
        return Err(Error::Domain(format!(
            "entropy argument {p} outside [0, 1]"
        )));
    }
    let ln_q = R::of_u32(q).ln();
    let plogp = |x: R| {
        if x == R::zero() {
            R::zero()
        } else {
            x * x.ln()
        }
    };
    let qm1 = R::of_u32(q - 1);
    Ok((p * qm1.ln() - plogp(p) - plogp(R::one() - p)) / ln_q)
}

/// Does `H_k(1 - 1/k - eps) <= 1 - (k / (4 ln k)) eps^2` hold?
/// Domain: `0 < eps < 1/k` (and `k >= 2`).
pub fn check_entropy_estimate<R: Real>(k: u32, eps: R) -> Result<bool> {
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    let inv_k = R::one() / R::of_u32(k);
    if !(eps > R::zero() && eps < inv_k) {
        return Err(Error::Domain(format!(
            "eps must lie in (0, 1/k); got eps = {eps} for k = {k}"
        )));
    }
    let lhs = entropy_q(R::one() - inv_k - eps, k)?;
    let rhs = R::one() - R::of_u32(k) / (R::of_f64(4.0) * R::of_u32(k).ln()) * eps * eps;
    Ok(lhs <= rhs + R::of_f64(MARGIN))
}

/// Does `C(m, pm) (q-1)^(pm) <= q^(H_q(p) m)` hold? `p m` must be integral;
/// the left side is evaluated exactly and compared in log space.
pub fn check_binomial_estimate(m: u64, p: &BigRational, q: u32) -> Result<bool> {
    if q < 2 {
        return Err(Error::Domain(format!("need q >= 2, got {q}")));
    }
    if p < &BigRational::zero() || p > &BigRational::from_integer(1.into()) {
        return Err(Error::Domain(format!("p = {p} outside [0, 1]")));
    }
    let pm = p * BigRational::from_integer(m.into());
    if !pm.is_integer() {
        return Err(Error::Domain(format!(
            "p m must be an integer, got p = {p}, m = {m}"
        )));
    }
    let pm = pm.to_integer().to_u64().expect("0 <= pm <= m fits in u64");
    let lhs: BigUint =
        binomial(BigUint::from(m), BigUint::from(pm)) * BigUint::from(q - 1).pow(pm as u32);
    let p_f = pm as f64 / m as f64;
    let h = entropy_q::<f64>(p_f, q)?;
    let rhs_ln = h * m as f64 * f64::from(q).ln();
    Ok(big_ln(&lhs) <= rhs_ln + MARGIN)
}
