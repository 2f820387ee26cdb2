//! Bosonic and fermionic walker pairs in the factorized-amplitude regime.

use num_complex::Complex;

use crate::distinguishable::{component, JointAmplitude, MeetingSeries, TwoWalkerKind, TwoWalkerSpec};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::walk::{BasisWalk, CoinOperator, Spinor, WalkerState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExchangeClass {
    Boson,
    Fermion,
}

impl ExchangeClass {
    pub fn name(self) -> &'static str {
        match self {
            ExchangeClass::Boson => "boson",
            ExchangeClass::Fermion => "fermion",
        }
    }
}

/// Diagonal boson probability from factorized amplitudes:
/// `2|a_L b_L|² + 2|a_R b_R|² + |a_L b_R + a_R b_L|²`.
#[inline]
pub fn boson_diagonal<T: Real>(a: &Spinor<T>, b: &Spinor<T>) -> T {
    let two = T::lit(2.0);
    two * (a.l * b.l).norm_sqr() + two * (a.r * b.r).norm_sqr() + (a.l * b.r + a.r * b.l).norm_sqr()
}

/// Diagonal fermion probability from factorized amplitudes:
/// `|a_L b_R − a_R b_L|²`.
#[inline]
pub fn fermion_diagonal<T: Real>(a: &Spinor<T>, b: &Spinor<T>) -> T {
    (a.l * b.r - a.r * b.l).norm_sqr()
}

/// Boson diagonal from general joint amplitudes `ψ_ij(m, m)`.
pub fn boson_diagonal_joint<T: Real>(psi: &JointAmplitude<T>) -> T {
    let two = T::lit(2.0);
    two * psi[component(0, 0)].norm_sqr()
        + two * psi[component(1, 1)].norm_sqr()
        + (psi[component(0, 1)] + psi[component(1, 0)]).norm_sqr()
}

/// Fermion diagonal from general joint amplitudes `ψ_ij(m, m)`.
pub fn fermion_diagonal_joint<T: Real>(psi: &JointAmplitude<T>) -> T {
    (psi[component(0, 1)] - psi[component(1, 0)]).norm_sqr()
}

/// Probability weight of the symmetrized state: two bosons in the same
/// single-particle state carry an extra `1/√2` in amplitude.
fn state_factor<T: Real>(stat: ExchangeClass, identical: bool) -> T {
    match (stat, identical) {
        (ExchangeClass::Boson, true) => T::lit(0.5),
        _ => T::one(),
    }
}

#[inline]
fn diagonal<T: Real>(stat: ExchangeClass, a: &Spinor<T>, b: &Spinor<T>) -> T {
    match stat {
        ExchangeClass::Boson => boson_diagonal(a, b),
        ExchangeClass::Fermion => fermion_diagonal(a, b),
    }
}

/// `M_B(m, t)` or `M_F(m, t)` for two walkers in the states `first` and
/// `second`.
pub fn meeting_at_indist<T: Real>(
    stat: ExchangeClass,
    first: &WalkerState<T>,
    second: &WalkerState<T>,
    m: i64,
) -> Result<T> {
    if first.time() != second.time() {
        return Err(Error::TimeMismatch { first: first.time(), second: second.time() });
    }
    let identical = first == second;
    if identical && stat == ExchangeClass::Fermion {
        return Ok(T::zero());
    }
    let v = diagonal(stat, &first.amplitude(m), &second.amplitude(m));
    Ok(state_factor::<T>(stat, identical) * v)
}

fn factorized_coins<T: Real>(spec: &TwoWalkerSpec<T>) -> Result<(Spinor<T>, Spinor<T>)> {
    match *spec.kind() {
        TwoWalkerKind::Factorized { first, second } => Ok((first, second)),
        TwoWalkerKind::Bell(_) => Err(Error::NotFactorized),
    }
}

fn total_with_basis<T: Real>(stat: ExchangeClass, spec: &TwoWalkerSpec<T>, basis: &BasisWalk<T>) -> Result<T> {
    let (c1, c2) = factorized_coins(spec)?;
    let o2 = spec.second_origin();
    let identical = o2 == 0 && c1 == c2;
    if identical && stat == ExchangeClass::Fermion {
        return Ok(T::zero());
    }
    let t = basis.time() as i64;
    let (lo, hi) = (o2 - t, t);
    let sum: T = (lo..=hi)
        .map(|m| diagonal(stat, &basis.amplitude(0, &c1, m), &basis.amplitude(o2, &c2, m)))
        .sum();
    Ok(state_factor::<T>(stat, identical) * sum)
}

/// `Σ_m M_{B,F}(m, t)` for a factorized start.
pub fn meeting_total_indist<T: Real>(
    stat: ExchangeClass,
    spec: &TwoWalkerSpec<T>,
    t: u64,
    coin: &CoinOperator<T>,
) -> Result<T> {
    let mut basis = BasisWalk::new(*coin);
    basis.advance_to(t);
    total_with_basis(stat, spec, &basis)
}

/// Meeting series for `t = 0..=horizon`.
pub fn meeting_series_indist<T: Real>(
    stat: ExchangeClass,
    spec: &TwoWalkerSpec<T>,
    horizon: u64,
    coin: &CoinOperator<T>,
) -> Result<MeetingSeries<T>> {
    factorized_coins(spec)?;
    let mut basis = BasisWalk::new(*coin);
    let mut values = Vec::with_capacity(horizon as usize + 1);
    loop {
        values.push(total_with_basis(stat, spec, &basis)?);
        if basis.time() == horizon {
            break;
        }
        basis.advance();
    }
    MeetingSeries::from_values(values)
}

/// Total probability of the (anti)symmetrized two-particle state built
/// from `first ⊗ second`, summed over Fock configurations: each unordered
/// pair of distinct modes once, plus double occupancy for bosons.
pub fn symmetrized_total_probability<T: Real>(
    stat: ExchangeClass,
    first: &WalkerState<T>,
    second: &WalkerState<T>,
) -> Result<T> {
    if first.time() != second.time() {
        return Err(Error::TimeMismatch { first: first.time(), second: second.time() });
    }
    let identical = first == second;
    let modes = |s: &WalkerState<T>| -> Vec<((i64, usize), Complex<T>)> {
        s.iter().flat_map(|(m, a)| [((m, 0), a.l), ((m, 1), a.r)]).collect()
    };
    let a = modes(first);
    let b = modes(second);
    let amp = |x: &[((i64, usize), Complex<T>)], k: (i64, usize)| {
        x.iter().find(|(key, _)| *key == k).map(|(_, v)| *v).unwrap_or(Complex::new(T::zero(), T::zero()))
    };
    let mut keys: Vec<(i64, usize)> = a.iter().map(|(k, _)| *k).chain(b.iter().map(|(k, _)| *k)).collect();
    keys.sort();
    keys.dedup();
    let sign = match stat {
        ExchangeClass::Boson => T::one(),
        ExchangeClass::Fermion => -T::one(),
    };
    let mut total = T::zero();
    for (x, &k) in keys.iter().enumerate() {
        let (ak, bk) = (amp(&a, k), amp(&b, k));
        if stat == ExchangeClass::Boson {
            total += T::lit(2.0) * (ak * bk).norm_sqr();
        }
        for &l in &keys[x + 1..] {
            let (al, bl) = (amp(&a, l), amp(&b, l));
            total += (ak * bl + (al * bk).scale(sign)).norm_sqr();
        }
    }
    Ok(state_factor::<T>(stat, identical) * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn had() -> CoinOperator<f64> {
        CoinOperator::hadamard()
    }

    #[test]
    fn identical_states() {
        let s = WalkerState::init_localized(0, Spinor::<f64>::symmetric()).unwrap().evolve(30, &had());
        let p = s.position_distribution();
        for m in -30..=30 {
            let b = meeting_at_indist(ExchangeClass::Boson, &s, &s, m).unwrap();
            assert!((b - p.get(m).powi(2)).abs() < 1e-15);
            assert_eq!(meeting_at_indist(ExchangeClass::Fermion, &s, &s, m).unwrap(), 0.0);
        }
    }

    #[test]
    fn one_step_rl_overlap() {
        let a = WalkerState::init_localized(0, Spinor::<f64>::right()).unwrap().step(&had());
        let b = WalkerState::init_localized(2, Spinor::<f64>::left()).unwrap().step(&had());
        assert!((a.amplitude(1).r.re + FRAC_1_SQRT_2).abs() < 1e-16);
        assert!((b.amplitude(1).l.re - FRAC_1_SQRT_2).abs() < 1e-16);
        for stat in [ExchangeClass::Boson, ExchangeClass::Fermion] {
            assert!((meeting_at_indist(stat, &a, &b, 1).unwrap() - 0.25).abs() < 1e-15);
            assert_eq!(meeting_at_indist(stat, &a, &b, 0).unwrap(), 0.0);
        }
    }

    #[test]
    fn mismatched_times_rejected() {
        let a = WalkerState::init_localized(0, Spinor::<f64>::right()).unwrap();
        let b = a.step(&had());
        assert!(matches!(
            meeting_at_indist(ExchangeClass::Boson, &a, &b, 0),
            Err(Error::TimeMismatch { .. })
        ));
    }

    #[test]
    fn bell_spec_rejected() {
        let spec = TwoWalkerSpec::<f64>::bell(2, crate::distinguishable::BellState::PsiPlus);
        assert!(matches!(
            meeting_total_indist(ExchangeClass::Fermion, &spec, 3, &had()),
            Err(Error::NotFactorized)
        ));
    }

    #[test]
    fn symmetrized_state_normalized() {
        let s = WalkerState::init_localized(0, Spinor::<f64>::symmetric()).unwrap().evolve(12, &had());
        let p = symmetrized_total_probability(ExchangeClass::Boson, &s, &s).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        let a = WalkerState::init_localized(0, Spinor::<f64>::right()).unwrap().evolve(12, &had());
        let b = WalkerState::init_localized(4, Spinor::<f64>::left()).unwrap().evolve(12, &had());
        for stat in [ExchangeClass::Boson, ExchangeClass::Fermion] {
            assert!((symmetrized_total_probability(stat, &a, &b).unwrap() - 1.0).abs() < 1e-12);
        }
        assert_eq!(symmetrized_total_probability(ExchangeClass::Fermion, &s, &s).unwrap(), 0.0);
    }

    #[test]
    fn identical_fermion_series_is_zero() {
        let spec = TwoWalkerSpec::factorized(0, Spinor::<f64>::symmetric(), Spinor::symmetric()).unwrap();
        let s = meeting_series_indist(ExchangeClass::Fermion, &spec, 50, &had()).unwrap();
        assert!(s.values().iter().all(|&v| v == 0.0));
    }
}
