use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar the numerics are generic over.
///
/// The two tolerances are the invariant checks used throughout the crate:
/// amplitude-level (norms, unitarity) and probability-level (sums of
/// distributions).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    const AMPLITUDE_TOL: Self;
    const PROBABILITY_TOL: Self;

    /// Converts an `f64` literal. Every `Real` can represent any finite f64
    /// up to rounding.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    const AMPLITUDE_TOL: f64 = 1e-12;
    const PROBABILITY_TOL: f64 = 1e-10;
}

impl Real for f32 {
    const AMPLITUDE_TOL: f32 = 1e-5;
    const PROBABILITY_TOL: f32 = 1e-4;
}
