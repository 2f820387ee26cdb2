//! Two independent classical ±1 walkers started `2d` apart.

mod monte_carlo;

pub use monte_carlo::{cl_monte_carlo, MonteCarloEstimate};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::walk::PositionDistribution;

/// Above this many steps float results use log-gamma instead of exact
/// integers.
pub const EXACT_STEP_LIMIT: u64 = 1000;

/// Query point for the classical meeting problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassicalQuery {
    pub t: u64,
    pub d: u64,
    pub m: Option<i64>,
}

/// `C(n, k)` over big integers; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // r·(n−k+i)/i stays an integer at every step
    (1..=k).fold(BigUint::one(), |r, i| r * (n - k + i) / i)
}

fn pow4(t: u64) -> BigUint {
    BigUint::one() << (2 * t as usize)
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `num / 2^shift` rounded to `f64` without forming the reduced fraction.
fn dyadic_to_f64(num: &BigUint, shift: u64) -> f64 {
    let bits = num.bits();
    let drop = bits.saturating_sub(64);
    let top = (num >> drop).to_u64().expect("at most 64 bits") as f64;
    libm::ldexp(top, drop as i32 - shift as i32)
}

/// Numerators over `4^t` of the first and second walker hitting `m`:
/// `C(t, (t+m)/2) · C(t, (t+m−2d)/2)`, zero off the reachable lattice.
fn meet_at_numerator(t: u64, m: i64, d: u64) -> BigUint {
    let (ti, di) = (t as i64, d as i64);
    let a = ti + m;
    let b = ti + m - 2 * di;
    if a.is_odd() || b.is_odd() || m > ti || m < 2 * di - ti {
        return BigUint::zero();
    }
    binomial(t, (a / 2) as u64) * binomial(t, (b / 2) as u64)
}

/// Exact probability that both walkers sit at `m` after `t` steps.
pub fn cl_meet_at_exact(t: u64, m: i64, d: u64) -> BigRational {
    ratio(meet_at_numerator(t, m, d), pow4(t))
}

pub fn cl_meet_at<T: Real>(t: u64, m: i64, d: u64) -> T {
    T::lit(dyadic_to_f64(&meet_at_numerator(t, m, d), 2 * t))
}

/// Total meeting probability as the explicit sum over meeting sites.
pub fn cl_meet_total_sum_exact(t: u64, d: u64) -> BigRational {
    let (ti, di) = (t as i64, d as i64);
    let num = ((2 * di - ti)..=ti).fold(BigUint::zero(), |acc, m| acc + meet_at_numerator(t, m, d));
    ratio(num, pow4(t))
}

/// `C(2t, t+d) / 4^t`
pub fn cl_meet_total_exact(t: u64, d: u64) -> BigRational {
    if d > t {
        return BigRational::zero();
    }
    ratio(binomial(2 * t, t + d), pow4(t))
}

/// `C(2t, t+d) / 4^t` as a float: exact integers up to
/// [`EXACT_STEP_LIMIT`], log-gamma beyond.
pub fn cl_meet_total<T: Real>(t: u64, d: u64) -> T {
    if d > t {
        return T::zero();
    }
    if t <= EXACT_STEP_LIMIT {
        return T::lit(dyadic_to_f64(&binomial(2 * t, t + d), 2 * t));
    }
    T::lit(ln_meet_total(t, d).exp())
}

fn ln_meet_total(t: u64, d: u64) -> f64 {
    let lg = |x: u64| libm::lgamma(x as f64 + 1.0);
    lg(2 * t) - lg(t + d) - lg(t - d) - 2.0 * t as f64 * std::f64::consts::LN_2
}

/// Gaussian estimate `exp(−d²/t) / √(πt)`.
pub fn cl_meet_total_gauss<T: Real>(t: u64, d: u64) -> Result<T> {
    if t == 0 {
        return Err(domain("Gaussian estimate needs t >= 1"));
    }
    let (t, d) = (T::lit(t as f64), T::lit(d as f64));
    Ok((-(d * d) / t).exp() / (T::PI() * t).sqrt())
}

/// Long-time form `(1 − d²/t) / √(πt)`, meaningful for `t > d²`.
pub fn cl_meet_total_long_time<T: Real>(t: u64, d: u64) -> Result<T> {
    if t == 0 {
        return Err(domain("long-time estimate needs t >= 1"));
    }
    let (t, d) = (T::lit(t as f64), T::lit(d as f64));
    Ok((T::one() - d * d / t) / (T::PI() * t).sqrt())
}

/// Peak estimate `1 / (√(2πe) · d)` reached near `t = 2d²`.
pub fn cl_peak_estimate<T: Real>(d: u64) -> Result<T> {
    if d == 0 {
        return Err(domain("peak estimate needs d >= 1"));
    }
    let two_pi_e = T::lit(2.0) * T::PI() * T::E();
    Ok(T::one() / (two_pi_e.sqrt() * T::lit(d as f64)))
}

/// Exact overall meeting probability `1 − Π_{k}(1 − M_cl(k, d))` for
/// `k = max(d, 1)..=horizon`; zero while the walkers cannot have met.
pub fn cl_overall<T: Real>(horizon: u64, d: u64) -> T {
    if horizon < d || horizon == 0 {
        return T::zero();
    }
    let mut log_miss = T::zero();
    for k in d.max(1)..=horizon {
        let m: T = cl_meet_total(k, d);
        if m >= T::one() {
            return T::one();
        }
        log_miss += (-m).ln_1p();
    }
    -log_miss.exp_m1()
}

/// First-order estimate `1 − exp(−Σ_k M_cl(k, d))`.
pub fn cl_overall_sum_estimate<T: Real>(horizon: u64, d: u64) -> T {
    if horizon < d || horizon == 0 {
        return T::zero();
    }
    let sum: T = (d.max(1)..=horizon).map(|k| cl_meet_total::<T>(k, d)).sum();
    -(-sum).exp_m1()
}

/// Closed-form estimate
/// `1 − exp(−2√(T/π) e^{−d²/T}) · exp(2d · erfc(d/√T))`.
pub fn cl_overall_estimate<T: Real>(horizon: u64, d: u64) -> Result<T> {
    if horizon == 0 {
        return Err(domain("overall estimate needs T >= 1"));
    }
    let (tt, dd) = (horizon as f64, d as f64);
    let exponent = -2.0 * (tt / std::f64::consts::PI).sqrt() * (-dd * dd / tt).exp()
        + 2.0 * dd * libm::erfc(dd / tt.sqrt());
    Ok(T::lit(-exponent.exp_m1()))
}

/// Binomial distribution of one classical walker after `t` steps from 0.
pub fn classical_distribution<T: Real>(t: u64) -> PositionDistribution<T> {
    let probs = (0..=2 * t)
        .map(|i| {
            let m = i as i64 - t as i64;
            if (m + t as i64).is_odd() {
                T::zero()
            } else {
                T::lit(dyadic_to_f64(&binomial(t, ((m + t as i64) / 2) as u64), t))
            }
        })
        .collect();
    PositionDistribution::from_dense(-(t as i64), t, probs)
}
