use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Internal coin state of one walker at one site: the amplitudes for
/// moving left and right on the next shift.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Spinor<T> {
    pub l: Complex<T>,
    pub r: Complex<T>,
}

impl<T: Real> Spinor<T> {
    pub fn new(l: Complex<T>, r: Complex<T>) -> Self {
        Self { l, r }
    }

    pub fn zero() -> Self {
        Self::new(Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), T::zero()))
    }

    /// |L⟩
    pub fn left() -> Self {
        Self::new(Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()))
    }

    /// |R⟩
    pub fn right() -> Self {
        Self::new(Complex::new(T::zero(), T::zero()), Complex::new(T::one(), T::zero()))
    }

    /// (|L⟩ + i|R⟩)/√2, the coin state giving an unbiased Hadamard walk.
    pub fn symmetric() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self::new(Complex::new(h, T::zero()), Complex::new(T::zero(), h))
    }

    pub fn norm_sqr(&self) -> T {
        self.l.norm_sqr() + self.r.norm_sqr()
    }

    pub fn is_finite(&self) -> bool {
        self.l.re.is_finite() && self.l.im.is_finite() && self.r.re.is_finite() && self.r.im.is_finite()
    }

    pub fn scale(&self, w: Complex<T>) -> Self {
        Self::new(self.l * w, self.r * w)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.l + other.l, self.r + other.r)
    }

    pub(crate) fn check_normalized(&self) -> Result<()> {
        let norm = self.norm_sqr();
        if !self.is_finite() || (norm - T::one()).abs() > T::AMPLITUDE_TOL {
            return Err(Error::Normalization { norm: norm.as_f64() });
        }
        Ok(())
    }
}

/// A 2×2 unitary acting on the coin space, row-major in the (L, R) basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinOperator<T> {
    entries: [[Complex<T>; 2]; 2],
}

impl<T: Real> CoinOperator<T> {
    /// Builds a coin, rejecting matrices with `C†C` further than the
    /// amplitude tolerance from the identity in any entry.
    pub fn new(entries: [[Complex<T>; 2]; 2]) -> Result<Self> {
        let coin = Self { entries };
        let deviation = coin.unitarity_deviation();
        if !(deviation <= T::AMPLITUDE_TOL) {
            return Err(Error::NotUnitary { deviation: deviation.as_f64() });
        }
        Ok(coin)
    }

    /// (1/√2)·[[1, 1], [1, −1]]
    pub fn hadamard() -> Self {
        let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        Self { entries: [[h, h], [h, -h]] }
    }

    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        Self { entries: [[one, zero], [zero, one]] }
    }

    pub fn entries(&self) -> [[Complex<T>; 2]; 2] {
        self.entries
    }

    #[inline]
    pub fn apply(&self, s: &Spinor<T>) -> Spinor<T> {
        let e = &self.entries;
        Spinor::new(e[0][0] * s.l + e[0][1] * s.r, e[1][0] * s.l + e[1][1] * s.r)
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let a = &self.entries;
        let b = &other.entries;
        let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { entries: out }
    }

    pub fn adjoint(&self) -> Self {
        let e = &self.entries;
        Self { entries: [[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]] }
    }

    /// Largest entrywise modulus of `C†C − I`.
    pub fn unitarity_deviation(&self) -> T {
        let prod = self.adjoint().compose(self);
        let mut worst = T::zero();
        for (i, row) in prod.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let target = if i == j { T::one() } else { T::zero() };
                let dev = (v - Complex::new(target, T::zero())).norm();
                if !(dev <= worst) {
                    worst = dev;
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn close(a: C, b: C) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn hadamard_rows() {
        let h = CoinOperator::<f64>::hadamard();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = h.apply(&Spinor::left());
        assert!(close(a.l, C::new(s, 0.0)) && close(a.r, C::new(s, 0.0)));
        let b = h.apply(&Spinor::right());
        assert!(close(b.l, C::new(s, 0.0)) && close(b.r, C::new(-s, 0.0)));
    }

    #[test]
    fn hadamard_squares_to_identity() {
        let h = CoinOperator::<f64>::hadamard();
        let hh = h.compose(&h);
        let id = CoinOperator::<f64>::identity();
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(hh.entries()[i][j], id.entries()[i][j]));
            }
        }
        assert!(h.unitarity_deviation() < 1e-15);
    }

    #[test]
    fn rejects_non_unitary() {
        let one = C::new(1.0, 0.0);
        let err = CoinOperator::new([[one, one], [one, one]]).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));
    }

    #[test]
    fn accepts_phase_coin() {
        let z = C::new(0.0, 0.0);
        let coin = CoinOperator::new([[C::new(0.0, 1.0), z], [z, C::new(-1.0, 0.0)]]);
        assert!(coin.is_ok());
    }

    #[test]
    fn works_in_single_precision() {
        let h = CoinOperator::<f32>::hadamard();
        assert!(h.unitarity_deviation() < 1e-6);
        assert!(Spinor::<f32>::symmetric().check_normalized().is_ok());
    }
}
