//! One module per subcommand; each resolves its defaults, runs the library,
//! and hands a (config, report) pair to the emitter.

pub mod bounds;
pub mod codes;
pub mod coins;
pub mod diag;
pub mod estimate;
pub mod greedy;
pub mod lcs;
pub mod table;

use clap::ValueEnum;
use csgamma::EstimateMethod;

/// CLI-facing mirror of [`EstimateMethod`] (the library type stays free of
/// clap derives).
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    ExactDp,
    Greedy,
}

impl Method {
    pub fn to_lib(self) -> EstimateMethod {
        match self {
            Method::ExactDp => EstimateMethod::ExactDp,
            Method::Greedy => EstimateMethod::Greedy,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::ExactDp => "exact-dp",
            Method::Greedy => "greedy",
        }
    }
}
