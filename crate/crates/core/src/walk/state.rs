use num_complex::Complex;

use super::coin::{CoinOperator, Spinor};
use super::distribution::PositionDistribution;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Single-walker wavefunction after `time` steps from a walker localized at
/// `origin`.
///
/// Amplitudes are stored densely over the light cone
/// `[origin − time, origin + time]`; sites of the wrong parity are kept and
/// stay exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkerState<T> {
    origin: i64,
    time: u64,
    amps: Vec<Spinor<T>>,
}

impl<T: Real> WalkerState<T> {
    /// Walker at `origin` with internal state `coin` and no steps taken.
    pub fn init_localized(origin: i64, coin: Spinor<T>) -> Result<Self> {
        coin.check_normalized()?;
        Ok(Self { origin, time: 0, amps: vec![coin] })
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    /// Leftmost site of the light cone.
    pub fn min_position(&self) -> i64 {
        self.origin - self.time as i64
    }

    pub fn max_position(&self) -> i64 {
        self.origin + self.time as i64
    }

    /// Amplitude at site `m`; zero outside the light cone.
    #[inline]
    pub fn amplitude(&self, m: i64) -> Spinor<T> {
        let i = m - self.min_position();
        if i < 0 || i as usize >= self.amps.len() {
            Spinor::zero()
        } else {
            self.amps[i as usize]
        }
    }

    /// `(m, amplitude)` over the stored block, including zero-parity sites.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Spinor<T>)> + '_ {
        let lo = self.min_position();
        self.amps.iter().enumerate().map(move |(i, s)| (lo + i as i64, s))
    }

    /// The coin spinor of a state that has not been evolved yet.
    pub fn initial_coin(&self) -> Option<Spinor<T>> {
        (self.time == 0).then(|| self.amps[0])
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(Spinor::norm_sqr).sum()
    }

    /// One application of `U = S(I ⊗ C)`: the coined L component moves to
    /// `m − 1`, the coined R component to `m + 1`.
    pub fn step(&self, coin: &CoinOperator<T>) -> Self {
        let n = self.amps.len();
        let mut next = vec![Spinor::zero(); n + 2];
        for (i, s) in self.amps.iter().enumerate() {
            let c = coin.apply(s);
            // site m = lo + i; new block starts at lo − 1
            next[i].l = c.l;
            next[i + 2].r = c.r;
        }
        Self { origin: self.origin, time: self.time + 1, amps: next }
    }

    /// `U^steps` applied to the state.
    pub fn evolve(&self, steps: u64, coin: &CoinOperator<T>) -> Self {
        let mut s = self.clone();
        for _ in 0..steps {
            s = s.step(coin);
        }
        s
    }

    /// Same wavefunction with every position moved by `shift`.
    pub fn translated(&self, shift: i64) -> Self {
        Self { origin: self.origin + shift, time: self.time, amps: self.amps.clone() }
    }

    /// `Σ_k w_k ψ_k` over states sharing origin and time.
    pub fn superpose(terms: &[(Complex<T>, &WalkerState<T>)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or_else(|| crate::error::domain("empty superposition"))?;
        let mut amps = vec![Spinor::zero(); first.amps.len()];
        for (w, st) in terms {
            if st.origin != first.origin {
                return Err(crate::error::domain("superposed states must share an origin"));
            }
            if st.time != first.time {
                return Err(Error::TimeMismatch { first: first.time, second: st.time });
            }
            for (acc, s) in amps.iter_mut().zip(&st.amps) {
                *acc = acc.add(&s.scale(*w));
            }
        }
        Ok(Self { origin: first.origin, time: first.time, amps })
    }

    /// `P(m) = |ψ_L(m)|² + |ψ_R(m)|²` over the light cone.
    pub fn position_distribution(&self) -> PositionDistribution<T> {
        PositionDistribution::from_dense(
            self.min_position(),
            self.time,
            self.amps.iter().map(Spinor::norm_sqr).collect(),
        )
    }

    /// Checks the normalization, light-cone and parity invariants.
    pub fn check_invariants(&self) -> Result<()> {
        if self.amps.len() != 2 * self.time as usize + 1 {
            return Err(crate::error::domain("amplitude block does not match the light cone"));
        }
        for (m, s) in self.iter() {
            if !s.is_finite() {
                return Err(crate::error::domain(format!("non-finite amplitude at {m}")));
            }
            if (m - self.origin + self.time as i64).rem_euclid(2) == 1 && *s != Spinor::zero() {
                return Err(crate::error::domain(format!("parity violated at {m}")));
            }
        }
        let norm = self.norm_sqr();
        if (norm - T::one()).abs() > T::AMPLITUDE_TOL {
            return Err(Error::Normalization { norm: norm.as_f64() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    type C = Complex<f64>;

    fn had() -> CoinOperator<f64> {
        CoinOperator::hadamard()
    }

    #[test]
    fn localized_states() {
        let s = WalkerState::init_localized(0, Spinor::<f64>::left()).unwrap();
        assert_eq!(s.time(), 0);
        assert_eq!(s.amplitude(0), Spinor::left());
        let s = WalkerState::init_localized(20, Spinor::<f64>::right()).unwrap();
        assert_eq!(s.amplitude(20), Spinor::right());
        assert_eq!(s.amplitude(19), Spinor::zero());
        let s = WalkerState::init_localized(0, Spinor::<f64>::symmetric()).unwrap();
        assert!((s.amplitude(0).r - C::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-16);
    }

    #[test]
    fn rejects_unnormalized_coin() {
        let bad = Spinor::new(C::new(1.0, 0.0), C::new(1.0, 0.0));
        assert!(matches!(WalkerState::init_localized(0, bad), Err(Error::Normalization { .. })));
    }

    #[test]
    fn one_step_from_right() {
        let s = WalkerState::init_localized(0, Spinor::<f64>::right()).unwrap().step(&had());
        assert!((s.amplitude(-1).l - C::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-16);
        assert!((s.amplitude(1).r - C::new(-FRAC_1_SQRT_2, 0.0)).norm() < 1e-16);
        assert_eq!(s.amplitude(-1).r, C::new(0.0, 0.0));
        assert_eq!(s.amplitude(1).l, C::new(0.0, 0.0));
    }

    #[test]
    fn one_step_from_left() {
        let s = WalkerState::init_localized(0, Spinor::<f64>::left()).unwrap().step(&had());
        assert!((s.amplitude(-1).l - C::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-16);
        assert!((s.amplitude(1).r - C::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn two_steps_from_right() {
        // hand evolution: t=1 has L(-1)=1/√2, R(1)=-1/√2;
        // t=2: L(-2)=1/2, R(0)=1/2, L(0)=-1/2, R(2)=1/2
        let s = WalkerState::init_localized(0, Spinor::<f64>::right()).unwrap().evolve(2, &had());
        let p = s.position_distribution();
        assert!((p.get(-2) - 0.25).abs() < 1e-15);
        assert!((p.get(0) - 0.5).abs() < 1e-15);
        assert!((p.get(2) - 0.25).abs() < 1e-15);
        assert_eq!(p.get(1), 0.0);
    }

    #[test]
    fn zero_steps_is_identity() {
        let s = WalkerState::init_localized(3, Spinor::<f64>::symmetric()).unwrap();
        assert_eq!(s.evolve(0, &had()), s);
    }

    #[test]
    fn right_coin_drifts_right() {
        let p = WalkerState::init_localized(0, Spinor::<f64>::right())
            .unwrap()
            .evolve(100, &had())
            .position_distribution();
        assert!(p.mean() > 20.0, "mean {}", p.mean());
    }

    #[test]
    fn evolve_composes() {
        let s = WalkerState::init_localized(0, Spinor::<f64>::symmetric()).unwrap();
        let a = s.evolve(7, &had()).evolve(5, &had());
        let b = s.evolve(12, &had());
        assert_eq!(a, b);
    }

    #[test]
    fn invariants_hold_along_long_run() {
        let mut s = WalkerState::init_localized(-4, Spinor::<f64>::symmetric()).unwrap();
        for _ in 0..300 {
            s = s.step(&had());
            s.check_invariants().unwrap();
        }
    }

    #[test]
    fn superpose_requires_same_time() {
        let a = WalkerState::init_localized(0, Spinor::<f64>::left()).unwrap();
        let b = a.step(&had());
        let one = C::new(1.0, 0.0);
        assert!(matches!(
            WalkerState::superpose(&[(one, &a), (one, &b)]),
            Err(Error::TimeMismatch { .. })
        ));
    }
}
