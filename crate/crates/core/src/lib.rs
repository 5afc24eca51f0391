//! Simulation, exact analytics, and entropy bounds for the limiting
//! normalized longest common subsequence of `d` independent uniformly random
//! k-ary strings (the generalized Chvátal–Sankoff constant).
//!
//! The pieces fit together like this:
//!
//! - [`ensemble`] samples reproducible string tuples from splittable seeds
//!   ([`seed`]) and reads/writes them as text.
//! - [`lcs`] computes exact multi-string LCS values (with witnesses), a
//!   brute-force reference, and the budgeted prefix-split ("diagonal")
//!   variant whose normalized limit equals the constant.
//! - [`greedy`] runs the round-based majority matcher whose per-round cost
//!   is described exactly by the coin process in [`coins`]; together they
//!   give the `d / E[Z]` lower bound in [`bounds`].
//! - [`entropy`] and [`counting`] carry the first-moment counting apparatus
//!   behind the upper bounds in [`bounds`].
//! - [`montecarlo`] turns any of the estimators into seeded, parallel,
//!   order-independent estimates with distribution-free error bars.
//! - [`codes`] applies the constant to list-decodability of random codes
//!   against deletions.
//!
//! Analytic routines that work over floats are generic over [`scalar::Real`]
//! (instantiable at `f32` or `f64`); exact quantities use unbounded
//! integers/rationals. [`Scalar`] fixes the default precision used by the
//! convenience wrappers and the CLI.

pub mod bounds;
pub mod codes;
pub mod coins;
pub mod counting;
pub mod ensemble;
pub mod entropy;
pub mod error;
pub mod greedy;
pub mod lcs;
pub mod montecarlo;
pub mod params;
pub mod rational;
pub mod scalar;
pub mod seed;
pub mod subseq;

/// Default floating-point type for analytic routines.
pub type Scalar = f64;

pub use bounds::{
    bound_report, bound_table, closed_form_epsilon, closed_form_valid, lower_bound_binary,
    lower_bound_binary_exact, lower_bound_binary_scan, lower_bound_kary, upper_bound_bisect,
    upper_bound_closed, BoundReport,
};
pub use codes::{
    check_list_decodable, code_from_words, deletion_threshold, max_subset_lcs, proposition_sweep,
    sample_code, Code, DecodeReport, ScanBudget, SubsetScan, SweepRow, Violation,
};
pub use coins::{
    coin_analytics, expected_flips, expected_minority, expected_minority_scan,
    simulate_coin_process, summarize_flips, summarize_minority, CoinAnalytics, CoinRound,
};
pub use counting::{count_supersequences_bound, count_supersequences_exact};
pub use ensemble::{sample_ensemble, Provenance, StringEnsemble};
pub use entropy::{check_binomial_estimate, check_entropy_estimate, entropy_q};
pub use error::{Error, Result};
pub use greedy::{
    greedy_match, greedy_match_kary, greedy_match_kary_seeded, greedy_match_kary_seeded_with,
    greedy_match_kary_with, greedy_match_seeded, greedy_match_seeded_with, greedy_match_with,
    GreedyOptions, GreedyResult, RoundTrace, TieBreak,
};
pub use lcs::{
    diagonal_lcs, diagonal_lcs_with, lcs_bruteforce, lcs_exact, lcs_exact_with, CellBudget,
    DiagonalResult, LcsResult,
};
pub use montecarlo::{
    concentration_probe, estimate_diagonal, estimate_gamma, ConcentrationReport, EstimateMethod,
    EstimateReport,
};
pub use params::{Params, Symbol, MAX_ALPHABET};
pub use scalar::Real;
pub use seed::Seed;
pub use subseq::{binary_filter, is_subsequence};
