use crate::error::{domain, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlowEnvelopeCoin {
    L,
    R,
    Symmetric,
}

/// Non-oscillating part of the single-walker density at position `x`,
/// time `t`, for a walker started at the origin. Defined strictly inside
/// `|x| < t/√2`.
///
/// The value is the density on the occupied parity sublattice; it
/// integrates to 2 over the support because every other site is empty.
pub fn slow_envelope<T: Real>(x: T, t: T, coin: SlowEnvelopeCoin) -> Result<T> {
    if !(t > T::zero()) {
        return Err(domain(format!("envelope needs t > 0, got {t}")));
    }
    let u = x / t;
    let edge = T::one() - T::lit(2.0) * u * u;
    if !(edge > T::zero()) {
        return Err(domain(format!("|x| = {} outside the envelope support |x| < t/√2", x.abs())));
    }
    let base = T::lit(2.0) / (T::PI() * t * edge.sqrt());
    Ok(match coin {
        SlowEnvelopeCoin::L => base / (T::one() + u),
        SlowEnvelopeCoin::R => base / (T::one() - u),
        SlowEnvelopeCoin::Symmetric => base / (T::one() - u * u),
    })
}
