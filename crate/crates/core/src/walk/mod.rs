//! Single coined walker on the integer line.

mod basis;
mod coin;
mod distribution;
mod state;

pub use basis::BasisWalk;
pub use coin::{CoinOperator, Spinor};
pub use distribution::PositionDistribution;
pub use state::WalkerState;

use crate::scalar::Real;

/// The Hadamard coin.
pub fn hadamard<T: Real>() -> CoinOperator<T> {
    CoinOperator::hadamard()
}

/// Standard deviation of a position distribution.
pub fn stddev<T: Real>(dist: &PositionDistribution<T>) -> T {
    dist.stddev()
}
