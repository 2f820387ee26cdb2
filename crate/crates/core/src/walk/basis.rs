use super::coin::{CoinOperator, Spinor};
use super::state::WalkerState;
use crate::error::{domain, Result};
use crate::scalar::Real;

/// Evolutions of `|0,L⟩` and `|0,R⟩` advanced in lockstep.
///
/// By linearity and translation covariance, every localized start
/// `|s⟩ ⊗ (α|L⟩ + β|R⟩)` evolves to `α ψ^L(m − s) + β ψ^R(m − s)`, so these
/// two runs serve any number of walkers.
#[derive(Clone, Debug)]
pub struct BasisWalk<T> {
    coin: CoinOperator<T>,
    left: WalkerState<T>,
    right: WalkerState<T>,
}

impl<T: Real> BasisWalk<T> {
    pub fn new(coin: CoinOperator<T>) -> Self {
        Self {
            coin,
            left: WalkerState::init_localized(0, Spinor::left()).expect("unit spinor"),
            right: WalkerState::init_localized(0, Spinor::right()).expect("unit spinor"),
        }
    }

    pub fn coin(&self) -> &CoinOperator<T> {
        &self.coin
    }

    pub fn time(&self) -> u64 {
        self.left.time()
    }

    pub fn advance(&mut self) {
        self.left = self.left.step(&self.coin);
        self.right = self.right.step(&self.coin);
    }

    pub fn advance_to(&mut self, t: u64) {
        while self.time() < t {
            self.advance();
        }
    }

    /// `ψ^L(t)` from the origin.
    pub fn left(&self) -> &WalkerState<T> {
        &self.left
    }

    /// `ψ^R(t)` from the origin.
    pub fn right(&self) -> &WalkerState<T> {
        &self.right
    }

    /// Amplitude at `m` of the walker started at `origin` with `coin`.
    #[inline]
    pub fn amplitude(&self, origin: i64, coin: &Spinor<T>, m: i64) -> Spinor<T> {
        let a = self.left.amplitude(m - origin);
        let b = self.right.amplitude(m - origin);
        a.scale(coin.l).add(&b.scale(coin.r))
    }

    /// Current-time evolution of an unevolved state.
    pub fn state_for(&self, initial: &WalkerState<T>) -> Result<WalkerState<T>> {
        let coin = initial
            .initial_coin()
            .ok_or_else(|| domain("basis reconstruction needs a time-0 state"))?;
        let s = initial.origin();
        WalkerState::superpose(&[
            (coin.l, &self.left.translated(s)),
            (coin.r, &self.right.translated(s)),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn reconstruction_matches_direct_evolution() {
        let h = CoinOperator::<f64>::hadamard();
        let mut basis = BasisWalk::new(h);
        basis.advance_to(37);
        let coin = Spinor::new(Complex::new(0.6, 0.0), Complex::new(0.0, -0.8));
        let start = WalkerState::init_localized(11, coin).unwrap();
        let direct = start.evolve(37, &h);
        let rebuilt = basis.state_for(&start).unwrap();
        for m in direct.min_position()..=direct.max_position() {
            let a = direct.amplitude(m);
            let b = rebuilt.amplitude(m);
            assert!((a.l - b.l).norm() < 1e-14 && (a.r - b.r).norm() < 1e-14);
            let c = basis.amplitude(11, &coin, m);
            assert!((a.l - c.l).norm() < 1e-14 && (a.r - c.r).norm() < 1e-14);
        }
    }
}
