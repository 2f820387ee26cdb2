use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coin spinor is not normalized: |L|^2 + |R|^2 = {norm}")]
    Normalization { norm: f64 },
    #[error("coin operator is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("walker states are at different times ({first} vs {second})")]
    TimeMismatch { first: u64, second: u64 },
    #[error("operation requires a factorized two-walker state")]
    NotFactorized,
    #[error("{steps} steps exceeds the oracle cap of {cap}")]
    ResourceCap { steps: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
