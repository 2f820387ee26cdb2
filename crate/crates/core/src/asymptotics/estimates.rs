use num_complex::Complex;

use super::elliptic::{ellip_k, ellip_pi};
use super::quadrature::integrate;
use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::stats;

/// Initial coin pair of two factorized walkers: `|L⟩|R⟩`, symmetric on
/// both, or `|R⟩|L⟩`, with walker 1 on the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EstimateKind {
    RL,
    S,
    LR,
}

impl EstimateKind {
    pub const ALL: [EstimateKind; 3] = [EstimateKind::RL, EstimateKind::S, EstimateKind::LR];

    pub fn name(self) -> &'static str {
        match self {
            EstimateKind::RL => "RL",
            EstimateKind::S => "S",
            EstimateKind::LR => "LR",
        }
    }
}

fn check_d(d: u64) -> Result<()> {
    if d == 0 {
        return Err(domain("estimate needs d >= 1"));
    }
    Ok(())
}

/// Smallest time at which the two envelopes touch, `√2·d`.
pub fn overlap_time<T: Real>(d: u64) -> T {
    T::SQRT_2() * T::from_int(d as i64)
}

// times within a few ulps below √2·d are treated as the boundary itself
fn at_least_overlap<T: Real>(t: T, d: u64) -> Result<T> {
    let t0 = overlap_time::<T>(d);
    if t >= t0 {
        return Ok(t);
    }
    if t >= t0 * (T::one() - T::lit(8.0) * T::epsilon()) {
        return Ok(t0);
    }
    Err(domain(format!("t = {t} is below sqrt(2)*d = {t0}: the envelopes do not overlap")))
}

/// Parameters of the closed form at `(t, d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipticParams<T> {
    pub f_plus: T,
    pub f_minus: T,
    /// `i·√(t²/(2d²) − 1)`; its square is the parameter of K and Π.
    pub modulus_a: Complex<T>,
    pub b_plus: T,
    pub b_minus: T,
    pub c_plus: T,
    pub c_minus: T,
}

impl<T: Real> EllipticParams<T> {
    /// Defined for `d ≥ 1`, `t ≥ √2·d`. `f_plus` is infinite at
    /// `t = (4 + 2√2)·d`.
    pub fn new(t: T, d: u64) -> Result<Self> {
        check_d(d)?;
        let t = at_least_overlap(t, d)?;
        let dd = T::from_int(d as i64);
        let r2 = T::SQRT_2();
        let two = T::lit(2.0);
        let four = T::lit(4.0);
        let pi2 = T::PI() * T::PI();
        let ratio = t * t / (two * dd * dd) - T::one();
        let f_plus = two * t / (pi2 * dd * (t - dd) * (t * (two + r2) - four * dd) * (t * (two - r2) - four * dd));
        let f_minus = two * t / (pi2 * dd * (t + dd) * (t * (two + r2) + four * dd) * (t * (two - r2) + four * dd));
        let lag = t - r2 * dd;
        let b_plus = (T::one() + r2) * lag / (dd * (r2 - two));
        let b_minus = (T::one() - r2) * lag / (dd * (r2 + two));
        let c_plus = (t * (r2 - two) + four * dd) * lag / (r2 * dd * (t * (r2 + two) - four * dd));
        let c_minus = (t * (r2 + two) + four * dd) * lag / (r2 * dd * (t * (r2 - two) - four * dd));
        Ok(Self {
            f_plus,
            f_minus,
            modulus_a: Complex::new(T::zero(), ratio.max(T::zero()).sqrt()),
            b_plus,
            b_minus,
            c_plus,
            c_minus,
        })
    }

    /// `a²`, the (nonpositive) parameter of the elliptic integrals.
    pub fn parameter(&self) -> T {
        -self.modulus_a.im * self.modulus_a.im
    }
}

/// Closed-form value with the path it took.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipticEstimate<T> {
    pub value: T,
    /// A characteristic exceeded one and Π was taken as a principal value.
    pub principal_value: bool,
    /// The point sat on a removable singularity of the prefactors and the
    /// value was interpolated from neighbouring times.
    pub interpolated: bool,
}

/// Time at which `F₊` has its pole, `(4 + 2√2)·d`.
pub fn removable_singularity<T: Real>(d: u64) -> T {
    (T::lit(4.0) + T::lit(2.0) * T::SQRT_2()) * T::from_int(d as i64)
}

fn characteristics<T: Real>(kind: EstimateKind, p: &EllipticParams<T>) -> Vec<T> {
    match kind {
        EstimateKind::RL => vec![p.b_plus, p.c_plus],
        EstimateKind::LR => vec![p.b_minus, p.c_minus],
        EstimateKind::S => vec![p.b_plus, p.b_minus, p.c_plus, p.c_minus],
    }
}

fn closed_form<T: Real>(kind: EstimateKind, t: T, d: u64) -> Result<(T, bool)> {
    let p = EllipticParams::new(t, d)?;
    let t = at_least_overlap(t, d)?;
    let m = p.parameter();
    let k = ellip_k(m)?;
    let chars = characteristics(kind, &p);
    let pv = chars.iter().any(|&c| c > T::one());
    let pi = |n: T| ellip_pi(n, m);
    let dd = T::from_int(d as i64);
    let r2 = T::SQRT_2();
    let a = T::lit(4.0) + T::lit(2.0) * r2;
    let b = T::lit(4.0) - T::lit(2.0) * r2;
    let two = T::lit(2.0);
    let t2 = t * t;
    let value = match kind {
        EstimateKind::RL => {
            p.f_plus
                * (two * (t - dd) * (t - b * dd) * k
                    + r2 * ((t - a * dd) * (t - b * dd) * pi(p.b_plus)? - t2 * pi(p.c_plus)?))
        }
        EstimateKind::LR => {
            p.f_minus
                * (two * (t + dd) * (t + a * dd) * k
                    - r2 * ((t + a * dd) * (t + b * dd) * pi(p.b_minus)? - t2 * pi(p.c_minus)?))
        }
        EstimateKind::S => {
            let pref = T::PI() * T::PI() * p.f_plus * p.f_minus / T::lit(4.0);
            let first = T::lit(16.0) * dd * (t2 - dd * dd) * (t + a * dd) * (t - b * dd) * k;
            let second = r2
                * (t + a * dd)
                * (t - a * dd)
                * (t + b * dd)
                * (t - b * dd)
                * ((t + dd) * pi(p.b_plus)? + (t - dd) * pi(p.b_minus)?);
            let third = r2
                * t2
                * ((t + dd) * (t + a * dd) * (t + b * dd) * pi(p.c_plus)?
                    + (t - dd) * (t - a * dd) * (t - b * dd) * pi(p.c_minus)?);
            pref * (first + second - third)
        }
    };
    Ok((value, pv))
}

/// Closed-form estimate of the total meeting probability at `(t, d)`,
/// `t ≥ √2·d`, through complete elliptic integrals of imaginary modulus.
pub fn meeting_elliptic<T: Real>(kind: EstimateKind, t: T, d: u64) -> Result<EllipticEstimate<T>> {
    check_d(d)?;
    let t = at_least_overlap(t, d)?;
    let probe = EllipticParams::new(t, d)?;
    let pole_tol = T::lit(10.0) * T::epsilon().sqrt();
    let near_pole = characteristics(kind, &probe).iter().any(|&c| (c - T::one()).abs() < pole_tol);
    let t_star = removable_singularity::<T>(d);
    let near_singular = kind != EstimateKind::LR && ((t - t_star) / t).abs() < pole_tol;
    if near_pole || near_singular {
        let centre = if near_singular { t_star } else { t };
        let h = T::epsilon().cbrt();
        let (lo, pv_lo) = closed_form(kind, centre * (T::one() - h), d)?;
        let (hi, pv_hi) = closed_form(kind, centre * (T::one() + h), d)?;
        let w = if near_singular { (t - t_star * (T::one() - h)) / (T::lit(2.0) * h * t_star) } else { T::lit(0.5) };
        return Ok(EllipticEstimate {
            value: lo + (hi - lo) * w,
            principal_value: pv_lo || pv_hi || near_pole,
            interpolated: true,
        });
    }
    let (value, principal_value) = closed_form(kind, t, d)?;
    Ok(EllipticEstimate { value, principal_value, interpolated: false })
}

/// Relative tolerance of [`meeting_quadrature`]; with values of order
/// `1/t` this keeps the absolute error far below 1e-9.
pub fn quadrature_tolerance<T: Real>() -> T {
    T::lit(1e-11).max(T::lit(64.0) * T::epsilon())
}

/// Estimate of the total meeting probability from the overlap of the two
/// slow envelopes, by adaptive quadrature over `[2d − t/√2, t/√2]`.
/// `x = d + h·sin θ` removes the inverse square roots at both ends.
pub fn meeting_quadrature<T: Real>(kind: EstimateKind, t: T, d: u64) -> Result<T> {
    check_d(d)?;
    let t = at_least_overlap(t, d)?;
    let dd = T::from_int(d as i64);
    let two_d = dd + dd;
    let b = t / T::SQRT_2();
    let half = (b - dd).max(T::zero());
    let weight = move |x: T| -> T {
        let u = x / t;
        let v = (x - two_d) / t;
        match kind {
            EstimateKind::RL => (T::one() - u) * (T::one() + v),
            EstimateKind::LR => (T::one() + u) * (T::one() - v),
            EstimateKind::S => (T::one() - u * u) * (T::one() - v * v),
        }
    };
    let integrand = |theta: T| {
        let x = dd + half * theta.sin();
        T::one() / (weight(x) * ((x + b) * (two_d + b - x)).sqrt())
    };
    let hp = T::FRAC_PI_2();
    let pi2 = T::PI() * T::PI();
    if half == T::zero() {
        return Ok(T::PI() * integrand(T::zero()) / pi2);
    }
    let r = integrate(integrand, -hp, hp, T::zero(), quadrature_tolerance::<T>())?;
    Ok(r.value / pi2)
}

/// Exact peak of the estimate, reached at `t = √2·d`.
pub fn peak_value<T: Real>(kind: EstimateKind, d: u64) -> Result<T> {
    check_d(d)?;
    let dd = T::from_int(d as i64);
    let r2 = T::SQRT_2();
    let three = T::lit(3.0);
    let two = T::lit(2.0);
    let (num, den) = match kind {
        EstimateKind::RL => (two - three * r2, T::lit(18.0) - T::lit(13.0) * r2),
        EstimateKind::S => (two, T::one()),
        EstimateKind::LR => (two + three * r2, T::lit(18.0) + T::lit(13.0) * r2),
    };
    Ok(num / (T::PI() * dd * den))
}

/// `K(a)` with `a² = 1 − t²/(2d²)`.
pub fn k_exact<T: Real>(t: T, d: u64) -> Result<T> {
    check_d(d)?;
    EllipticParams::new(t, d).and_then(|p| ellip_k(p.parameter()))
}

/// Large-`t` form of [`k_exact`]: `√2·d·ln(2√2·t/d)/t`.
pub fn k_asymptotic<T: Real>(t: T, d: u64) -> T {
    let dd = T::from_int(d as i64);
    let r2 = T::SQRT_2();
    r2 * dd * (T::lit(2.0) * r2 * t / dd).ln() / t
}

/// Leading-order decay `prefactor·ln(2√2·t/d)/t`; for `d = 0` the law is
/// `prefactor·ln(t)/t`.
pub fn leading_order<T: Real>(t: T, d: u64, prefactor: T) -> Result<T> {
    let dd = T::from_int(d as i64);
    if !(t > dd && t > T::zero()) {
        return Err(domain(format!("leading order needs t > d, got t = {t}, d = {d}")));
    }
    let log = if d == 0 { t.ln() } else { (T::lit(2.0) * T::SQRT_2() * t / dd).ln() };
    Ok(prefactor * log / t)
}

/// Least-squares prefactor of [`leading_order`] against data, with the
/// relative spread (max/min − 1) of the per-point ratios.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeadingOrderFit {
    pub prefactor: f64,
    pub spread: f64,
}

pub fn fit_leading_order(times: &[f64], values: &[f64], d: u64) -> Result<LeadingOrderFit> {
    if times.len() != values.len() || times.is_empty() {
        return Err(domain("fit needs equally long, nonempty time and value slices"));
    }
    let mut basis = Vec::with_capacity(times.len());
    let mut ratios = Vec::with_capacity(times.len());
    for (&t, &v) in times.iter().zip(values) {
        let g = leading_order(t, d, 1.0)?;
        basis.push(g);
        ratios.push(v / g);
    }
    let num: f64 = basis.iter().zip(values).map(|(g, v)| g * v).sum();
    let den: f64 = basis.iter().map(|g| g * g).sum();
    Ok(LeadingOrderFit { prefactor: num / den, spread: stats::spread(&ratios) })
}

/// `∫_{√2 d}^{T} M(t, d) dt` over the quadrature estimate.
pub fn overall_exponent_quantum<T: Real>(kind: EstimateKind, horizon: T, d: u64) -> Result<T> {
    check_d(d)?;
    let t0 = overlap_time::<T>(d);
    if !(horizon > t0) {
        return Err(domain(format!("horizon {horizon} must exceed sqrt(2)*d = {t0}")));
    }
    let failure = std::cell::Cell::new(None);
    let value = |t: T| match meeting_quadrature(kind, t, d) {
        Ok(v) => v,
        Err(e) => {
            failure.set(Some(e));
            T::zero()
        }
    };
    let tol = T::lit(1e-10).max(T::lit(64.0) * T::epsilon());
    let r = integrate(value, t0, horizon, T::zero(), tol)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(r.value)
}

/// `1 − exp(−∫_{√2 d}^{T} M(t, d) dt)`.
pub fn overall_estimate_quantum<T: Real>(kind: EstimateKind, horizon: T, d: u64) -> Result<T> {
    Ok(-(-overall_exponent_quantum(kind, horizon, d)?).exp_m1())
}
