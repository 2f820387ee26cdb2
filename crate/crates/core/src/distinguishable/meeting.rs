use num_complex::Complex;
use rayon::prelude::*;

use super::joint::{evolve_terms, JointDistribution, JointState};
use super::series::MeetingSeries;
use super::spec::{local_inner, Decomposition};
use crate::error::Result;
use crate::scalar::Real;
use crate::walk::{BasisWalk, CoinOperator, PositionDistribution, Spinor};

/// A decomposition term reduced to its two localized starts.
#[derive(Clone, Copy, Debug)]
struct LocalTerm<T> {
    weight: Complex<T>,
    first_origin: i64,
    first_coin: Spinor<T>,
    second_origin: i64,
    second_coin: Spinor<T>,
}

fn local_terms<T: Real>(dec: &Decomposition<T>) -> Vec<LocalTerm<T>> {
    dec.terms()
        .iter()
        .map(|t| LocalTerm {
            weight: t.weight,
            first_origin: t.first.origin(),
            first_coin: t.first.initial_coin().expect("time-0 term"),
            second_origin: t.second.origin(),
            second_coin: t.second.initial_coin().expect("time-0 term"),
        })
        .collect()
}

/// Sites where both walkers of some term can be found at time `t`.
fn overlap_range<T>(terms: &[LocalTerm<T>], t: u64) -> Option<(i64, i64)> {
    let t = t as i64;
    let lo = terms.iter().map(|x| x.first_origin.max(x.second_origin) - t).min()?;
    let hi = terms.iter().map(|x| x.first_origin.min(x.second_origin) + t).max()?;
    (lo <= hi).then_some((lo, hi))
}

#[inline]
fn diagonal_probability<T: Real>(basis: &BasisWalk<T>, terms: &[LocalTerm<T>], m: i64) -> T {
    let z = Complex::new(T::zero(), T::zero());
    let mut acc = [z; 4];
    for x in terms {
        let a = basis.amplitude(x.first_origin, &x.first_coin, m);
        let b = basis.amplitude(x.second_origin, &x.second_coin, m);
        let wa = [a.l * x.weight, a.r * x.weight];
        let bj = [b.l, b.r];
        for i in 0..2 {
            for j in 0..2 {
                acc[i + 2 * j] += wa[i] * bj[j];
            }
        }
    }
    acc.iter().map(|c| c.norm_sqr()).sum()
}

fn total_with_basis<T: Real>(basis: &BasisWalk<T>, terms: &[LocalTerm<T>]) -> T {
    match overlap_range(terms, basis.time()) {
        Some((lo, hi)) => (lo..=hi).map(|m| diagonal_probability(basis, terms, m)).sum(),
        None => T::zero(),
    }
}

/// `P(m, n, t) = Σ_ij |Σ_α w_α ψ₁ᵢ^α(m, t) ψ₂ⱼ^α(n, t)|²`
pub fn joint_distribution<T: Real>(dec: &Decomposition<T>, t: u64, coin: &CoinOperator<T>) -> JointDistribution<T> {
    JointState::from_decomposition(dec, t, coin).distribution()
}

/// `M_D(m, t) = P(m, m, t)`
pub fn meeting_at<T: Real>(dec: &Decomposition<T>, m: i64, t: u64, coin: &CoinOperator<T>) -> T {
    let mut basis = BasisWalk::new(*coin);
    basis.advance_to(t);
    diagonal_probability(&basis, &local_terms(dec), m)
}

/// `M(t) = Σ_m M_D(m, t)`
pub fn meeting_total<T: Real>(dec: &Decomposition<T>, t: u64, coin: &CoinOperator<T>) -> T {
    let mut basis = BasisWalk::new(*coin);
    basis.advance_to(t);
    total_with_basis(&basis, &local_terms(dec))
}

/// `M(t)` for `t = 0..=horizon` with its overall probabilities.
pub fn meeting_series<T: Real>(dec: &Decomposition<T>, horizon: u64, coin: &CoinOperator<T>) -> Result<MeetingSeries<T>> {
    meeting_series_many(std::slice::from_ref(dec), horizon, coin).map(|mut v| v.remove(0))
}

/// Meeting series for many initial states sharing one pair of basis
/// evolutions. Output order follows `decs`.
pub fn meeting_series_many<T: Real>(
    decs: &[Decomposition<T>],
    horizon: u64,
    coin: &CoinOperator<T>,
) -> Result<Vec<MeetingSeries<T>>> {
    let terms: Vec<Vec<LocalTerm<T>>> = decs.iter().map(local_terms).collect();
    let mut values: Vec<Vec<T>> = vec![Vec::with_capacity(horizon as usize + 1); decs.len()];
    let mut basis = BasisWalk::new(*coin);
    loop {
        let now: Vec<T> = terms.par_iter().map(|tt| total_with_basis(&basis, tt)).collect();
        for (v, x) in values.iter_mut().zip(now) {
            v.push(x);
        }
        if basis.time() == horizon {
            break;
        }
        basis.advance();
    }
    values.into_iter().map(MeetingSeries::from_values).collect()
}

/// Marginal position distributions of the two walkers at time `t`.
///
/// Uses `P₁(m) = Σ_{α,β} w̄_α w_β ⟨ψ₂^α|ψ₂^β⟩ Σᵢ ψ̄₁ᵢ^α(m) ψ₁ᵢ^β(m)`; the
/// overlaps are time independent.
pub fn reduced_distributions<T: Real>(
    dec: &Decomposition<T>,
    t: u64,
    coin: &CoinOperator<T>,
) -> (PositionDistribution<T>, PositionDistribution<T>) {
    let evolved = evolve_terms(dec, t, coin);
    let terms = dec.terms();
    let k = terms.len();
    let mut g_first = vec![Complex::new(T::zero(), T::zero()); k * k];
    let mut g_second = g_first.clone();
    for a in 0..k {
        for b in 0..k {
            let w = terms[a].weight.conj() * terms[b].weight;
            g_second[a * k + b] = w * local_inner(&terms[a].second, &terms[b].second);
            g_first[a * k + b] = w * local_inner(&terms[a].first, &terms[b].first);
        }
    }
    let marginal = |states: Vec<&crate::walk::WalkerState<T>>, gram: &[Complex<T>]| {
        let lo = states.iter().map(|s| s.min_position()).min().unwrap();
        let hi = states.iter().map(|s| s.max_position()).max().unwrap();
        let probs = (lo..=hi)
            .map(|m| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for a in 0..k {
                    let x = states[a].amplitude(m);
                    for b in 0..k {
                        let y = states[b].amplitude(m);
                        acc += gram[a * k + b] * (x.l.conj() * y.l + x.r.conj() * y.r);
                    }
                }
                acc.re
            })
            .collect();
        PositionDistribution::from_dense(lo, t, probs)
    };
    let p1 = marginal(evolved.iter().map(|e| &e.1).collect(), &g_second);
    let p2 = marginal(evolved.iter().map(|e| &e.2).collect(), &g_first);
    (p1, p2)
}
