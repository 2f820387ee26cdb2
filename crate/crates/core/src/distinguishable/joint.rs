use num_complex::Complex;

use super::spec::{Decomposition, TwoWalkerSpec};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::walk::{CoinOperator, PositionDistribution, WalkerState};

/// Default step cap for the tensor oracle; its cost grows like `t³`.
pub const DEFAULT_ORACLE_CAP: u64 = 400;

/// Joint coin components at one `(m, n)`, ordered `LL, RL, LR, RR` (first
/// letter for the first walker).
pub type JointAmplitude<T> = [Complex<T>; 4];

#[inline]
pub(crate) fn component(i: usize, j: usize) -> usize {
    i + 2 * j
}

/// Four-component two-walker amplitudes on a dense rectangle.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState<T> {
    time: u64,
    m_lo: i64,
    n_lo: i64,
    m_len: usize,
    n_len: usize,
    amps: Vec<JointAmplitude<T>>,
}

impl<T: Real> JointState<T> {
    fn zeros(time: u64, m_lo: i64, m_len: usize, n_lo: i64, n_len: usize) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self { time, m_lo, n_lo, m_len, n_len, amps: vec![[z; 4]; m_len * n_len] }
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn m_range(&self) -> (i64, i64) {
        (self.m_lo, self.m_lo + self.m_len as i64 - 1)
    }

    pub fn n_range(&self) -> (i64, i64) {
        (self.n_lo, self.n_lo + self.n_len as i64 - 1)
    }

    #[inline]
    fn index(&self, m: i64, n: i64) -> Option<usize> {
        let a = m - self.m_lo;
        let b = n - self.n_lo;
        if a < 0 || b < 0 || a as usize >= self.m_len || b as usize >= self.n_len {
            None
        } else {
            Some(a as usize * self.n_len + b as usize)
        }
    }

    pub fn amplitude(&self, m: i64, n: i64) -> JointAmplitude<T> {
        match self.index(m, n) {
            Some(i) => self.amps[i],
            None => [Complex::new(T::zero(), T::zero()); 4],
        }
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().flat_map(|a| a.iter()).map(|c| c.norm_sqr()).sum()
    }

    /// `U ⊗ U` applied once, directly on the joint amplitudes.
    pub fn step(&self, coin: &CoinOperator<T>) -> Self {
        let c = coin.entries();
        let mut next = Self::zeros(self.time + 1, self.m_lo - 1, self.m_len + 2, self.n_lo - 1, self.n_len + 2);
        for a in 0..self.m_len {
            for b in 0..self.n_len {
                let psi = &self.amps[a * self.n_len + b];
                for i in 0..2 {
                    for j in 0..2 {
                        let mut v = Complex::new(T::zero(), T::zero());
                        for k in 0..2 {
                            for l in 0..2 {
                                v = v + c[i][k] * c[j][l] * psi[component(k, l)];
                            }
                        }
                        // L (0) moves to m − 1, R (1) to m + 1; next grid starts one lower
                        let na = a + 2 * i;
                        let nb = b + 2 * j;
                        next.amps[na * next.n_len + nb][component(i, j)] = v;
                    }
                }
            }
        }
        next
    }

    /// Direct evolution of the joint amplitudes for `steps` steps.
    ///
    /// This is the test oracle for the amplitude-product path; it refuses
    /// runs longer than `cap`.
    pub fn evolve_oracle(spec: &TwoWalkerSpec<T>, steps: u64, coin: &CoinOperator<T>, cap: u64) -> Result<Self> {
        if steps > cap {
            return Err(Error::ResourceCap { steps, cap });
        }
        let mut st = Self::zeros(0, 0, 1, spec.second_origin(), 1);
        let c = spec.coin_matrix();
        for i in 0..2 {
            for j in 0..2 {
                st.amps[0][component(i, j)] = c[i][j];
            }
        }
        for _ in 0..steps {
            st = st.step(coin);
        }
        Ok(st)
    }

    /// Joint amplitudes at time `t` assembled from single-walker evolutions
    /// of each decomposition term.
    pub fn from_decomposition(dec: &Decomposition<T>, t: u64, coin: &CoinOperator<T>) -> Self {
        let evolved = evolve_terms(dec, t, coin);
        let (m_lo, m_hi, n_lo, n_hi) = bounding_box(&evolved);
        let m_len = (m_hi - m_lo + 1) as usize;
        let n_len = (n_hi - n_lo + 1) as usize;
        let mut st = Self::zeros(t, m_lo, m_len, n_lo, n_len);
        for (w, first, second) in &evolved {
            for (m, a) in first.iter() {
                let ai = [a.l, a.r];
                for (n, b) in second.iter() {
                    let bj = [b.l, b.r];
                    let idx = st.index(m, n).expect("inside bounding box");
                    for i in 0..2 {
                        for j in 0..2 {
                            st.amps[idx][component(i, j)] += *w * ai[i] * bj[j];
                        }
                    }
                }
            }
        }
        st
    }

    /// `P(m, n) = Σ_ij |ψ_ij(m, n)|²`
    pub fn distribution(&self) -> JointDistribution<T> {
        JointDistribution {
            m_lo: self.m_lo,
            n_lo: self.n_lo,
            m_len: self.m_len,
            n_len: self.n_len,
            probs: self.amps.iter().map(|a| a.iter().map(|c| c.norm_sqr()).sum()).collect(),
        }
    }
}

pub(crate) type EvolvedTerm<T> = (Complex<T>, WalkerState<T>, WalkerState<T>);

pub(crate) fn evolve_terms<T: Real>(dec: &Decomposition<T>, t: u64, coin: &CoinOperator<T>) -> Vec<EvolvedTerm<T>> {
    let mut basis = crate::walk::BasisWalk::new(*coin);
    basis.advance_to(t);
    dec.terms()
        .iter()
        .map(|term| {
            (
                term.weight,
                basis.state_for(&term.first).expect("time-0 term"),
                basis.state_for(&term.second).expect("time-0 term"),
            )
        })
        .collect()
}

fn bounding_box<T: Real>(terms: &[EvolvedTerm<T>]) -> (i64, i64, i64, i64) {
    let m_lo = terms.iter().map(|(_, a, _)| a.min_position()).min().unwrap();
    let m_hi = terms.iter().map(|(_, a, _)| a.max_position()).max().unwrap();
    let n_lo = terms.iter().map(|(_, _, b)| b.min_position()).min().unwrap();
    let n_hi = terms.iter().map(|(_, _, b)| b.max_position()).max().unwrap();
    (m_lo, m_hi, n_lo, n_hi)
}

/// Joint position probabilities `P(m, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution<T> {
    m_lo: i64,
    n_lo: i64,
    m_len: usize,
    n_len: usize,
    probs: Vec<T>,
}

impl<T: Real> JointDistribution<T> {
    pub fn get(&self, m: i64, n: i64) -> T {
        let a = m - self.m_lo;
        let b = n - self.n_lo;
        if a < 0 || b < 0 || a as usize >= self.m_len || b as usize >= self.n_len {
            T::zero()
        } else {
            self.probs[a as usize * self.n_len + b as usize]
        }
    }

    pub fn m_range(&self) -> (i64, i64) {
        (self.m_lo, self.m_lo + self.m_len as i64 - 1)
    }

    pub fn n_range(&self) -> (i64, i64) {
        (self.n_lo, self.n_lo + self.n_len as i64 - 1)
    }

    pub fn total(&self) -> T {
        self.probs.iter().copied().sum()
    }

    /// `Σ_m P(m, m)`
    pub fn diagonal_sum(&self) -> T {
        let lo = self.m_lo.max(self.n_lo);
        let hi = self.m_range().1.min(self.n_range().1);
        (lo..=hi).map(|m| self.get(m, m)).sum()
    }

    /// `(P₁, P₂)` with `P₁(m) = Σ_n P(m, n)` and `P₂(n) = Σ_m P(m, n)`.
    pub fn marginals(&self, time: u64) -> (PositionDistribution<T>, PositionDistribution<T>) {
        let mut p1 = vec![T::zero(); self.m_len];
        let mut p2 = vec![T::zero(); self.n_len];
        for a in 0..self.m_len {
            for b in 0..self.n_len {
                let p = self.probs[a * self.n_len + b];
                p1[a] += p;
                p2[b] += p;
            }
        }
        (
            PositionDistribution::from_dense(self.m_lo, time, p1),
            PositionDistribution::from_dense(self.n_lo, time, p2),
        )
    }

    /// Largest entrywise difference over the union of both supports.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let m_lo = self.m_lo.min(other.m_lo);
        let m_hi = self.m_range().1.max(other.m_range().1);
        let n_lo = self.n_lo.min(other.n_lo);
        let n_hi = self.n_range().1.max(other.n_range().1);
        let mut worst = T::zero();
        for m in m_lo..=m_hi {
            for n in n_lo..=n_hi {
                worst = worst.max((self.get(m, n) - other.get(m, n)).abs());
            }
        }
        worst
    }
}
