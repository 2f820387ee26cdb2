//! Slow envelopes of the single-walker density and the estimates of the
//! meeting probability built from their overlap.

pub mod elliptic;
mod envelope;
mod estimates;
pub mod quadrature;

pub use envelope::{slow_envelope, SlowEnvelopeCoin};
pub use estimates::{
    fit_leading_order, k_asymptotic, k_exact, leading_order, meeting_elliptic, meeting_quadrature,
    overall_estimate_quantum, overall_exponent_quantum, overlap_time, peak_value, quadrature_tolerance,
    removable_singularity, EllipticEstimate, EllipticParams, EstimateKind, LeadingOrderFit,
};
