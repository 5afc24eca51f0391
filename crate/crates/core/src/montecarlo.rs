//! Seeded Monte Carlo estimates of the limiting normalized LCS.
//!
//! Trial `i` always derives its randomness from `seed.child(i)`, so results
//! are reproducible bit-for-bit regardless of how trials are scheduled
//! across threads; parallel collection preserves trial order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensemble::sample_ensemble;
use crate::error::{Error, Result};
use crate::greedy::{greedy_match_kary_seeded, greedy_match_seeded};
use crate::lcs::{diagonal_lcs_with, lcs_exact_with, CellBudget};
use crate::params::Params;
use crate::seed::Seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMethod {
    /// Full dynamic program per trial; cost grows like (n+1)^d.
    ExactDp,
    /// Greedy matcher with budget `n d` (filtered budget `2 n d / k` when
    /// k > 2); linear time, a lower-bound flavored estimate.
    Greedy,
}

/// Aggregate of one estimation run. The mean is normalized per `n` (or per
/// `budget / d` for split maximization), so it lives in [0, 1].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateReport {
    pub kind: String,
    pub params: Params,
    pub trials: u64,
    pub seed: Seed,
    /// Split budget for the diagonal variant, matcher budget for greedy.
    pub budget: Option<usize>,
    pub mean: f64,
    /// Sample standard deviation of the per-trial normalized values.
    pub stddev: f64,
    /// Distribution-free 99% confidence interval around the mean
    /// (half-width `sqrt(ln(2/0.01) / (2 trials))`, clamped to [0, 1]).
    pub ci_low: f64,
    pub ci_high: f64,
    /// Wall-clock seconds; excluded from serialized output so that equal
    /// seeds produce byte-identical reports.
    #[serde(skip)]
    pub wall_time_s: f64,
}

fn aggregate(
    kind: &str,
    params: &Params,
    seed: Seed,
    budget: Option<usize>,
    values: &[f64],
    wall_time_s: f64,
) -> EstimateReport {
    let trials = values.len() as u64;
    let mean = values.iter().sum::<f64>() / trials as f64;
    let stddev = if trials < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials as f64 - 1.0)).sqrt()
    };
    let half = (f64::ln(2.0 / 0.01) / (2.0 * trials as f64)).sqrt();
    EstimateReport {
        kind: kind.to_string(),
        params: *params,
        trials,
        seed,
        budget,
        mean,
        stddev,
        ci_low: (mean - half).max(0.0),
        ci_high: (mean + half).min(1.0),
        wall_time_s,
    }
}

fn validate_run(params: &Params, trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidParams("need at least one trial".into()));
    }
    if params.n == 0 {
        return Err(Error::InvalidParams(
            "normalized estimates need n >= 1".into(),
        ));
    }
    Ok(())
}

/// Estimate the normalized LCS of `d` random k-ary strings of length `n`.
pub fn estimate_gamma(
    params: &Params,
    trials: u64,
    seed: Seed,
    method: EstimateMethod,
) -> Result<EstimateReport> {
    estimate_gamma_with(params, trials, seed, method, CellBudget::default())
}

/// Per-trial normalized exact LCS values; trial `i` uses `seed.child(i)`.
fn exact_dp_values(
    params: &Params,
    trials: u64,
    seed: Seed,
    cells: CellBudget,
) -> Result<Vec<f64>> {
    // Every trial costs the same table; reject the whole run up front.
    let per_trial = (params.n as u128 + 1).pow(params.d);
    if per_trial > cells.0 {
        return Err(Error::CellBudget {
            what: "lcs table",
            required: per_trial,
            allowed: cells.0,
        });
    }
    let n = params.n as f64;
    (0..trials as usize)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let ens = sample_ensemble(params, seed.child(i as u64))?;
            Ok(lcs_exact_with(&ens, false, cells)?.length as f64 / n)
        })
        .collect()
}

pub fn estimate_gamma_with(
    params: &Params,
    trials: u64,
    seed: Seed,
    method: EstimateMethod,
    cells: CellBudget,
) -> Result<EstimateReport> {
    validate_run(params, trials)?;
    let start = std::time::Instant::now();
    let n = params.n as f64;
    let values: Vec<f64> = match method {
        EstimateMethod::ExactDp => exact_dp_values(params, trials, seed, cells)?,
        EstimateMethod::Greedy => (0..trials as usize)
            .into_par_iter()
            .map(|i| -> Result<f64> {
                let child = seed.child(i as u64);
                let matched = if params.k == 2 {
                    let budget = params.n * params.d as usize;
                    greedy_match_seeded(params, child, budget)?.matched.len()
                } else {
                    // Filtered budget: a fraction 2/k of symbols survive.
                    let budget = 2 * params.n * params.d as usize / params.k as usize;
                    greedy_match_kary_seeded(params, child, budget, 0, 1)?
                        .matched
                        .len()
                };
                Ok(matched as f64 / n)
            })
            .collect::<Result<_>>()?,
    };
    let kind = match method {
        EstimateMethod::ExactDp => "lcs-exact",
        EstimateMethod::Greedy => "greedy",
    };
    let budget = match method {
        EstimateMethod::ExactDp => None,
        EstimateMethod::Greedy => Some(if params.k == 2 {
            params.n * params.d as usize
        } else {
            2 * params.n * params.d as usize / params.k as usize
        }),
    };
    Ok(aggregate(
        kind,
        params,
        seed,
        budget,
        &values,
        start.elapsed().as_secs_f64(),
    ))
}

/// Estimate the budgeted split maximum: strings of length `budget` are
/// sampled and the best prefix split summing to `budget` is taken, then
/// normalized by `budget / d`. `params.n` is ignored in favor of `budget`.
pub fn estimate_diagonal(
    params: &Params,
    budget: usize,
    trials: u64,
    seed: Seed,
) -> Result<EstimateReport> {
    estimate_diagonal_with(params, budget, trials, seed, CellBudget::default())
}

pub fn estimate_diagonal_with(
    params: &Params,
    budget: usize,
    trials: u64,
    seed: Seed,
    cells: CellBudget,
) -> Result<EstimateReport> {
    if trials == 0 {
        return Err(Error::InvalidParams("need at least one trial".into()));
    }
    if budget == 0 {
        return Err(Error::InvalidParams(
            "normalized split estimates need budget >= 1".into(),
        ));
    }
    let gen_params = Params::new(params.k, params.d, budget)?;
    let per_trial = (budget as u128 + 1).pow(params.d);
    if per_trial > cells.0 {
        return Err(Error::CellBudget {
            what: "diagonal lcs table",
            required: per_trial,
            allowed: cells.0,
        });
    }
    let start = std::time::Instant::now();
    let scale = budget as f64 / f64::from(params.d);
    let values: Vec<f64> = (0..trials as usize)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let ens = sample_ensemble(&gen_params, seed.child(i as u64))?;
            Ok(diagonal_lcs_with(&ens, budget, cells)?.value as f64 / scale)
        })
        .collect::<Result<_>>()?;
    Ok(aggregate(
        "diagonal",
        &gen_params,
        seed,
        Some(budget),
        &values,
        start.elapsed().as_secs_f64(),
    ))
}

/// Empirical check of the measure-concentration tail: the fraction of trials
/// whose normalized LCS lands at least `eps` from the run mean, next to the
/// martingale tail bound `2 exp(-eps^2 n / 2)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub params: Params,
    pub trials: u64,
    pub eps: f64,
    pub mean: f64,
    /// Fraction of trials with |value - mean| >= eps.
    pub far_fraction: f64,
    /// Azuma bound on that fraction (often far from tight).
    pub tail_bound: f64,
}

pub fn concentration_probe(
    params: &Params,
    trials: u64,
    seed: Seed,
    eps: f64,
) -> Result<ConcentrationReport> {
    validate_run(params, trials)?;
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InvalidParams("eps must be positive".into()));
    }
    let values = exact_dp_values(params, trials, seed, CellBudget::default())?;
    let mean = values.iter().sum::<f64>() / trials as f64;
    let far = values.iter().filter(|v| (*v - mean).abs() >= eps).count();
    Ok(ConcentrationReport {
        params: *params,
        trials,
        eps,
        mean,
        far_fraction: far as f64 / trials as f64,
        tail_bound: (2.0 * (-eps * eps * params.n as f64 / 2.0).exp()).min(1.0),
    })
}
