//! Meeting probabilities of two walkers in the discrete-time Hadamard walk
//! on the integer line, with classical baselines and asymptotic estimates.
//!
//! The numerics are generic over [`Real`]; the aliases below fix the scalar
//! to `f64`, which is what the experiment recipes use.

pub mod asymptotics;
pub mod classical;
pub mod distinguishable;
pub mod error;
pub mod indistinguishable;
pub mod scalar;
pub mod stats;
pub mod sweep;
pub mod walk;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Spinor64 = walk::Spinor<f64>;
pub type Coin64 = walk::CoinOperator<f64>;
pub type WalkerState64 = walk::WalkerState<f64>;
pub type PositionDistribution64 = walk::PositionDistribution<f64>;
pub type TwoWalkerSpec64 = distinguishable::TwoWalkerSpec<f64>;
pub type Decomposition64 = distinguishable::Decomposition<f64>;
pub type JointState64 = distinguishable::JointState<f64>;
pub type MeetingSeries64 = distinguishable::MeetingSeries<f64>;
pub type EllipticParams64 = asymptotics::EllipticParams<f64>;

pub type Spinor32 = walk::Spinor<f32>;
pub type Coin32 = walk::CoinOperator<f32>;
pub type WalkerState32 = walk::WalkerState<f32>;
