use num_complex::Complex;

use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::walk::{Spinor, WalkerState};

/// The four maximally entangled two-coin states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellState {
    /// (|LR⟩ + |RL⟩)/√2
    PsiPlus,
    /// (|LR⟩ − |RL⟩)/√2
    PsiMinus,
    /// (|LL⟩ + |RR⟩)/√2
    PhiPlus,
    /// (|LL⟩ − |RR⟩)/√2
    PhiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] =
        [BellState::PsiPlus, BellState::PsiMinus, BellState::PhiPlus, BellState::PhiMinus];

    /// Coin pairs and relative sign: `(first₁, second₁), (first₂, second₂), sign`.
    fn pairing<T: Real>(self) -> ((Spinor<T>, Spinor<T>), (Spinor<T>, Spinor<T>), T) {
        let (l, r) = (Spinor::left(), Spinor::right());
        match self {
            BellState::PsiPlus => ((l, r), (r, l), T::one()),
            BellState::PsiMinus => ((l, r), (r, l), -T::one()),
            BellState::PhiPlus => ((l, l), (r, r), T::one()),
            BellState::PhiMinus => ((l, l), (r, r), -T::one()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TwoWalkerKind<T> {
    Factorized { first: Spinor<T>, second: Spinor<T> },
    Bell(BellState),
}

/// Initial condition for two walkers: the first at site 0, the second at
/// site `2 · half_separation`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoWalkerSpec<T> {
    half_separation: u64,
    kind: TwoWalkerKind<T>,
}

impl<T: Real> TwoWalkerSpec<T> {
    pub fn factorized(half_separation: u64, first: Spinor<T>, second: Spinor<T>) -> Result<Self> {
        first.check_normalized()?;
        second.check_normalized()?;
        Ok(Self { half_separation, kind: TwoWalkerKind::Factorized { first, second } })
    }

    pub fn bell(half_separation: u64, which: BellState) -> Self {
        Self { half_separation, kind: TwoWalkerKind::Bell(which) }
    }

    /// First walker `R`, second `L`: the walkers drift towards each other.
    pub fn rl(half_separation: u64) -> Self {
        Self { half_separation, kind: TwoWalkerKind::Factorized { first: Spinor::right(), second: Spinor::left() } }
    }

    /// First walker `L`, second `R`: the walkers drift apart.
    pub fn lr(half_separation: u64) -> Self {
        Self { half_separation, kind: TwoWalkerKind::Factorized { first: Spinor::left(), second: Spinor::right() } }
    }

    /// Both walkers in the unbiased coin state.
    pub fn symmetric(half_separation: u64) -> Self {
        let s = Spinor::symmetric();
        Self { half_separation, kind: TwoWalkerKind::Factorized { first: s, second: s } }
    }

    pub fn half_separation(&self) -> u64 {
        self.half_separation
    }

    pub fn second_origin(&self) -> i64 {
        2 * self.half_separation as i64
    }

    pub fn kind(&self) -> &TwoWalkerKind<T> {
        &self.kind
    }

    pub fn is_factorized(&self) -> bool {
        matches!(self.kind, TwoWalkerKind::Factorized { .. })
    }

    /// Coin amplitudes `c_ij` of the initial joint coin state, `i` for the
    /// first walker. Index 0 is `L`, 1 is `R`.
    pub(crate) fn coin_matrix(&self) -> [[Complex<T>; 2]; 2] {
        let z = Complex::new(T::zero(), T::zero());
        let mut c = [[z; 2]; 2];
        match self.kind {
            TwoWalkerKind::Factorized { first, second } => {
                let a = [first.l, first.r];
                let b = [second.l, second.r];
                for i in 0..2 {
                    for j in 0..2 {
                        c[i][j] = a[i] * b[j];
                    }
                }
            }
            TwoWalkerKind::Bell(which) => {
                let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
                let (_, _, sign) = which.pairing::<T>();
                match which {
                    BellState::PsiPlus | BellState::PsiMinus => {
                        c[0][1] = h;
                        c[1][0] = h * sign;
                    }
                    BellState::PhiPlus | BellState::PhiMinus => {
                        c[0][0] = h;
                        c[1][1] = h * sign;
                    }
                }
            }
        }
        c
    }
}

/// One product term `w · ψ₁ ⊗ ψ₂` of an initial two-walker state.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<T> {
    pub weight: Complex<T>,
    pub first: WalkerState<T>,
    pub second: WalkerState<T>,
}

/// Initial two-walker state written as a sum of product states.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T> {
    terms: Vec<Term<T>>,
}

impl<T: Real> Decomposition<T> {
    /// Validates that every walker state is unevolved and that the implied
    /// joint state has unit norm.
    pub fn new(terms: Vec<Term<T>>) -> Result<Self> {
        if terms.is_empty() {
            return Err(domain("decomposition needs at least one term"));
        }
        if terms.iter().any(|t| t.first.time() != 0 || t.second.time() != 0) {
            return Err(domain("decomposition terms must be time-0 states"));
        }
        let dec = Self { terms };
        let norm = dec.norm_sqr();
        if (norm - T::one()).abs() > T::PROBABILITY_TOL {
            return Err(crate::error::Error::Normalization { norm: norm.as_f64() });
        }
        Ok(dec)
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    /// `‖Σ_α w_α ψ₁^α ⊗ ψ₂^α‖²`
    pub fn norm_sqr(&self) -> T {
        let mut acc = Complex::new(T::zero(), T::zero());
        for a in &self.terms {
            for b in &self.terms {
                acc = acc
                    + a.weight.conj()
                        * b.weight
                        * local_inner(&a.first, &b.first)
                        * local_inner(&a.second, &b.second);
            }
        }
        acc.re
    }
}

/// `⟨a|b⟩` for two unevolved (single-site) states.
pub(crate) fn local_inner<T: Real>(a: &WalkerState<T>, b: &WalkerState<T>) -> Complex<T> {
    if a.origin() != b.origin() {
        return Complex::new(T::zero(), T::zero());
    }
    let x = a.amplitude(a.origin());
    let y = b.amplitude(b.origin());
    x.l.conj() * y.l + x.r.conj() * y.r
}

/// Product-state decomposition of a two-walker initial condition.
pub fn decompose<T: Real>(spec: &TwoWalkerSpec<T>) -> Decomposition<T> {
    let o2 = spec.second_origin();
    let local = |origin, coin| WalkerState::init_localized(origin, coin).expect("unit spinor");
    let terms = match spec.kind {
        TwoWalkerKind::Factorized { first, second } => vec![Term {
            weight: Complex::new(T::one(), T::zero()),
            first: local(0, first),
            second: local(o2, second),
        }],
        TwoWalkerKind::Bell(which) => {
            let ((a1, a2), (b1, b2), sign) = which.pairing::<T>();
            let h = T::FRAC_1_SQRT_2();
            vec![
                Term { weight: Complex::new(h, T::zero()), first: local(0, a1), second: local(o2, a2) },
                Term { weight: Complex::new(h * sign, T::zero()), first: local(0, b1), second: local(o2, b2) },
            ]
        }
    };
    Decomposition { terms }
}
