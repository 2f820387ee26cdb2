//! Independent recomputation through the full tensor-product evolution.

use qwmeet::distinguishable::{JointState, DEFAULT_ORACLE_CAP};
use qwmeet::indistinguishable::{boson_diagonal_joint, fermion_diagonal_joint, ExchangeClass};
use qwmeet::sweep::{CoinLabel, WalkerKind};
use qwmeet::walk::{hadamard, PositionDistribution};
use qwmeet::TwoWalkerSpec64;

use crate::error::CliError;

/// Largest deviation tolerated between the production path and the oracle.
pub const ORACLE_TOL: f64 = 1e-10;

/// Longest horizon the oracle is run to.
pub const ORACLE_STEPS: u64 = DEFAULT_ORACLE_CAP;

fn diagonal_meeting(kind: WalkerKind, d: u64, joint: &JointState<f64>) -> f64 {
    let (m_lo, m_hi) = joint.m_range();
    let (n_lo, n_hi) = joint.n_range();
    let range = m_lo.max(n_lo)..=m_hi.min(n_hi);
    match kind {
        WalkerKind::Exchange(stat, a, b) => {
            let diag = |m| {
                let psi = joint.amplitude(m, m);
                match stat {
                    ExchangeClass::Boson => boson_diagonal_joint(&psi),
                    ExchangeClass::Fermion => fermion_diagonal_joint(&psi),
                }
            };
            let identical = d == 0 && a == b;
            let factor = if identical && stat == ExchangeClass::Boson { 0.5 } else { 1.0 };
            factor * range.map(diag).sum::<f64>()
        }
        _ => {
            let p = joint.distribution();
            range.map(|m| p.get(m, m)).sum()
        }
    }
}

/// `M(t)` for `t = 0..=horizon` from the joint evolution, `None` for the
/// classical kind. `horizon` must not exceed [`ORACLE_STEPS`].
pub fn meeting_series(kind: WalkerKind, d: u64, horizon: u64) -> Result<Option<Vec<f64>>, CliError> {
    let Some(spec) = kind.spec::<f64>(d) else { return Ok(None) };
    let coin = hadamard();
    let mut joint = JointState::evolve_oracle(&spec, 0, &coin, ORACLE_STEPS)?;
    let mut values = vec![diagonal_meeting(kind, d, &joint)];
    for _ in 0..horizon {
        joint = joint.step(&coin);
        values.push(diagonal_meeting(kind, d, &joint));
    }
    Ok(Some(values))
}

/// First-walker marginal of a pair started in the same coin state.
pub fn single_walker(coin: CoinLabel, t: u64) -> Result<PositionDistribution<f64>, CliError> {
    let spec = TwoWalkerSpec64::factorized(0, coin.spinor(), coin.spinor())?;
    let joint = JointState::evolve_oracle(&spec, t, &hadamard(), ORACLE_STEPS)?;
    Ok(joint.distribution().marginals(t).0)
}

/// Fails when `worst` exceeds [`ORACLE_TOL`].
pub fn check(what: &str, worst: f64) -> Result<f64, CliError> {
    if worst <= ORACLE_TOL {
        Ok(worst)
    } else {
        Err(CliError::Oracle(format!("{what}: max deviation {worst:e} exceeds {ORACLE_TOL:e}")))
    }
}
