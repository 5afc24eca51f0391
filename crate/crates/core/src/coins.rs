//! The per-round coin process behind the greedy matcher.
//!
//! A round flips `d` fair coins. The minority face count is
//! `Y = min(#heads, #tails)`, and each minority coin is reflipped until it
//! shows the majority face, each reflip a fresh fair coin. The total flips
//! consumed by a round is `Z = d + sum of Y independent Geometric(1/2)
//! variables` (trials-until-success convention, mean 2), so `E[Z] = d + 2E[Y]`
//! exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ratio_to_f64;
use crate::seed::Seed;

fn validate_d(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParams("need at least one coin".into()));
    }
    Ok(())
}

/// Central column of the previous row: `C(d-1, floor(d/2))`.
fn central_binomial(d: u32) -> BigUint {
    binomial(BigUint::from(d - 1), BigUint::from(d / 2))
}

fn expected_minority_from_central(d: u32, central: &BigUint) -> BigRational {
    // Both parities collapse to E[Y] = d * (2^(d-1) - C(d-1, floor(d/2))) / 2^d.
    let num = (BigUint::one() << (d as usize - 1)) - central;
    BigRational::new(
        BigInt::from(num * BigUint::from(d)),
        BigInt::one() << d as usize,
    )
}

/// Exact `E[Y]` for `d` fair coins, `Y` the minority face count.
pub fn expected_minority(d: u32) -> Result<BigRational> {
    validate_d(d)?;
    Ok(expected_minority_from_central(d, &central_binomial(d)))
}

/// Exact `E[Z] = d + 2 E[Y]`, the expected flips consumed by one round.
pub fn expected_flips(d: u32) -> Result<BigRational> {
    let ey = expected_minority(d)?;
    Ok(BigRational::from(BigInt::from(d)) + ey * BigRational::from(BigInt::from(2)))
}

/// Exact `E[Y]` for every `d` in `1..=max_d`, sharing one incremental
/// central-binomial recurrence instead of `max_d` independent factorials.
pub fn expected_minority_scan(max_d: u32) -> Result<Vec<BigRational>> {
    validate_d(max_d)?;
    let mut out = Vec::with_capacity(max_d as usize);
    // central = C(d-1, floor(d/2)), starting at d = 1 with C(0,0) = 1.
    let mut central = BigUint::one();
    for d in 1..=max_d {
        out.push(expected_minority_from_central(d, &central));
        // Advance to d+1. Even d doubles the coefficient; odd d moves both
        // row and column up: C(d, (d+1)/2) = C(d-1, (d-1)/2) * d / ((d+1)/2).
        if d % 2 == 0 {
            central *= BigUint::from(2u32);
        } else {
            central = central * BigUint::from(d) / BigUint::from(d.div_ceil(2));
        }
    }
    Ok(out)
}

/// Exact analytics for one round, with the centered-and-scaled minority
/// deficit `c_hat = (d/2 - E[Y]) / sqrt(d)` (tends to `1/sqrt(2 pi)`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoinAnalytics {
    pub d: u32,
    #[serde(with = "crate::rational::serde_ratio")]
    pub expected_minority: BigRational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub expected_flips: BigRational,
    pub expected_minority_f64: f64,
    pub expected_flips_f64: f64,
    pub c_hat: f64,
}

pub fn coin_analytics(d: u32) -> Result<CoinAnalytics> {
    let ey = expected_minority(d)?;
    let ez = BigRational::from(BigInt::from(d)) + &ey * BigRational::from(BigInt::from(2));
    let ey_f = ratio_to_f64(&ey);
    let ez_f = ratio_to_f64(&ez);
    let c_hat = (d as f64 / 2.0 - ey_f) / (d as f64).sqrt();
    Ok(CoinAnalytics {
        d,
        expected_minority: ey,
        expected_flips: ez,
        expected_minority_f64: ey_f,
        expected_flips_f64: ez_f,
        c_hat,
    })
}

/// One simulated round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoinRound {
    /// Majority face (ties resolve to 0).
    pub majority: u8,
    /// Minority face count Y.
    pub minority: u32,
    /// Total flips Z consumed by the round.
    pub flips: u64,
}

/// Flip `d` coins from dedicated per-trial substreams and run the reflip
/// stage. Trial `i` uses `seed.child(i)`, so any prefix of the trial sequence
/// is reproducible independently of `trials`.
pub fn simulate_coin_process(d: u32, trials: u64, seed: Seed) -> Result<Vec<CoinRound>> {
    validate_d(d)?;
    (0..trials as usize)
        .into_par_iter()
        .with_min_len(1024)
        .map(|i| Ok(one_round(d, seed.child(i as u64))))
        .collect()
}

fn one_round(d: u32, seed: Seed) -> CoinRound {
    let mut rng = seed.rng();
    // Initial flips, 64 coins per word.
    let mut ones = 0u32;
    let mut remaining = d;
    while remaining > 0 {
        let take = remaining.min(64);
        let word: u64 = rng.random();
        let mask = if take == 64 {
            u64::MAX
        } else {
            (1u64 << take) - 1
        };
        ones += (word & mask).count_ones();
        remaining -= take;
    }
    let majority: u8 = if 2 * ones > d { 1 } else { 0 };
    let minority = ones.min(d - ones);
    // Each minority coin reflips until the majority face appears; the count
    // of trailing zeros in a uniform word plus one is Geometric(1/2).
    let mut flips = d as u64;
    for _ in 0..minority {
        loop {
            let word: u64 = rng.random();
            if word != 0 {
                flips += u64::from(word.trailing_zeros()) + 1;
                break;
            }
            flips += 64;
        }
    }
    CoinRound {
        majority,
        minority,
        flips,
    }
}

/// Mean and standard error of the per-round flip totals.
pub fn summarize_flips(rounds: &[CoinRound]) -> (f64, f64) {
    summarize(rounds, |r| r.flips as f64)
}

/// Mean and standard error of the per-round minority counts.
pub fn summarize_minority(rounds: &[CoinRound]) -> (f64, f64) {
    summarize(rounds, |r| f64::from(r.minority))
}

fn summarize(rounds: &[CoinRound], field: impl Fn(&CoinRound) -> f64) -> (f64, f64) {
    let n = rounds.len() as f64;
    if rounds.is_empty() {
        return (0.0, 0.0);
    }
    let mean = rounds.iter().map(&field).sum::<f64>() / n;
    if rounds.len() < 2 {
        return (mean, 0.0);
    }
    let var = rounds
        .iter()
        .map(|r| (field(r) - mean).powi(2))
        .sum::<f64>()
        / (n - 1.0);
    (mean, (var / n).sqrt())
}
