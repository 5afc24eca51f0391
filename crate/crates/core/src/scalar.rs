//! Floating-point abstraction for the analytic-bound math.
//!
//! Entropy functions and bound curves are written against this trait so they
//! work at either precision; everything downstream of the reports uses the
//! crate-level [`Scalar`](crate::Scalar) alias (`f64`).

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type for entropy/bound computations: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Embed a small integer (alphabet size, string count).
    fn of_u32(v: u32) -> Self {
        <Self as FromPrimitive>::from_u32(v).expect("u32 converts to any Real")
    }

    /// Embed an `f64` constant (tolerances, pinned coefficients).
    fn of_f64(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite f64 converts to any Real")
    }
}

impl Real for f32 {}
impl Real for f64 {}
