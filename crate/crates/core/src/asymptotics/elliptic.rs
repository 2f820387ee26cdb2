//! Carlson symmetric integrals and the complete integrals K(m), Π(n|m)
//! built on them. Parameters follow the `m = k²` convention.

use crate::error::{domain, Result};
use crate::scalar::Real;

const MAX_DUPLICATIONS: usize = 200;

fn tolerance<T: Real>() -> T {
    T::epsilon()
}

/// `R_F(x, y, z)` for nonnegative arguments with at most one zero.
pub fn carlson_rf<T: Real>(x: T, y: T, z: T) -> Result<T> {
    let zero = T::zero();
    if !(x >= zero && y >= zero && z >= zero) {
        return Err(domain(format!("R_F needs nonnegative arguments, got ({x}, {y}, {z})")));
    }
    if [x, y, z].iter().filter(|v| **v == zero).count() > 1 {
        return Err(domain("R_F diverges with two zero arguments"));
    }
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let a0 = (x + y + z) / three;
    let q = (three * tolerance::<T>()).powf(T::lit(-1.0 / 6.0))
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut scale = T::one();
    for _ in 0..MAX_DUPLICATIONS {
        if scale * q < am.abs() {
            break;
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        xm = (xm + lambda) / four;
        ym = (ym + lambda) / four;
        zm = (zm + lambda) / four;
        am = (am + lambda) / four;
        scale /= four;
    }
    let xx = (a0 - x) * scale / am;
    let yy = (a0 - y) * scale / am;
    let zz = -xx - yy;
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    let series = T::one() - e2 / T::lit(10.0) + e3 / T::lit(14.0) + e2 * e2 / T::lit(24.0)
        - T::lit(3.0) * e2 * e3 / T::lit(44.0);
    Ok(series / am.sqrt())
}

/// `R_C(x, y)` for `x ≥ 0`, `y ≠ 0`. Negative `y` gives the Cauchy
/// principal value.
pub fn carlson_rc<T: Real>(x: T, y: T) -> Result<T> {
    let zero = T::zero();
    if !(x >= zero) || y == zero || !y.is_finite() {
        return Err(domain(format!("R_C undefined at ({x}, {y})")));
    }
    if y < zero {
        return Ok((x / (x - y)).sqrt() * carlson_rc(x - y, -y)?);
    }
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let a0 = (x + y + y) / three;
    let q = (three * tolerance::<T>()).powf(T::lit(-1.0 / 8.0)) * (a0 - x).abs();
    let (mut xm, mut ym, mut am) = (x, y, a0);
    let mut scale = T::one();
    for _ in 0..MAX_DUPLICATIONS {
        if scale * q < am.abs() {
            break;
        }
        let lambda = T::lit(2.0) * xm.sqrt() * ym.sqrt() + ym;
        xm = (xm + lambda) / four;
        ym = (ym + lambda) / four;
        am = (am + lambda) / four;
        scale /= four;
    }
    let s = (y - a0) * scale / am;
    let coeffs = [
        1.0,
        0.0,
        3.0 / 10.0,
        1.0 / 7.0,
        3.0 / 8.0,
        9.0 / 22.0,
        159.0 / 208.0,
        9.0 / 8.0,
    ];
    let series = coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * s + T::lit(c));
    Ok(series / am.sqrt())
}

/// `R_J(x, y, z, p)` for nonnegative `x, y, z` (at most one zero) and
/// `p ≠ 0`. Negative `p` gives the Cauchy principal value.
pub fn carlson_rj<T: Real>(x: T, y: T, z: T, p: T) -> Result<T> {
    let zero = T::zero();
    if !(x >= zero && y >= zero && z >= zero) {
        return Err(domain(format!("R_J needs nonnegative x, y, z, got ({x}, {y}, {z})")));
    }
    if [x, y, z].iter().filter(|v| **v == zero).count() > 1 {
        return Err(domain("R_J diverges with two zero arguments"));
    }
    if p == zero || !p.is_finite() {
        return Err(domain(format!("R_J undefined at p = {p}")));
    }
    if p < zero {
        return carlson_rj_pv(x, y, z, p);
    }
    let four = T::lit(4.0);
    let a0 = (x + y + z + p + p) / T::lit(5.0);
    let delta = (p - x) * (p - y) * (p - z);
    let q = (tolerance::<T>() / four).powf(T::lit(-1.0 / 6.0))
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs()).max((a0 - p).abs());
    let (mut xm, mut ym, mut zm, mut pm, mut am) = (x, y, z, p, a0);
    let mut scale = T::one();
    let mut sum = T::zero();
    for _ in 0..MAX_DUPLICATIONS {
        if scale * q < am.abs() {
            break;
        }
        let (sx, sy, sz, sp) = (xm.sqrt(), ym.sqrt(), zm.sqrt(), pm.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        let dm = (sp + sx) * (sp + sy) * (sp + sz);
        let em = scale * scale * scale * delta / (dm * dm);
        sum += scale * rc_one(em) / dm;
        xm = (xm + lambda) / four;
        ym = (ym + lambda) / four;
        zm = (zm + lambda) / four;
        pm = (pm + lambda) / four;
        am = (am + lambda) / four;
        scale /= four;
    }
    let xx = (a0 - x) * scale / am;
    let yy = (a0 - y) * scale / am;
    let zz = (a0 - z) * scale / am;
    let pp = -(xx + yy + zz) / T::lit(2.0);
    let e2 = xx * yy + xx * zz + yy * zz - T::lit(3.0) * pp * pp;
    let e3 = xx * yy * zz + T::lit(2.0) * e2 * pp + T::lit(4.0) * pp * pp * pp;
    let e4 = (T::lit(2.0) * xx * yy * zz + e2 * pp + T::lit(3.0) * pp * pp * pp) * pp;
    let e5 = xx * yy * zz * pp * pp;
    let series = T::one() - T::lit(3.0) * e2 / T::lit(14.0) + e3 / T::lit(6.0)
        + T::lit(9.0) * e2 * e2 / T::lit(88.0)
        - T::lit(3.0) * e4 / T::lit(22.0)
        - T::lit(9.0) * e2 * e3 / T::lit(52.0)
        + T::lit(3.0) * e5 / T::lit(26.0);
    Ok(scale * series / (am * am.sqrt()) + T::lit(6.0) * sum)
}

/// `R_C(1, 1 + e)` in closed form, `e > −1`.
fn rc_one<T: Real>(e: T) -> T {
    let small = T::lit(1e-4);
    if e.abs() < small {
        // series of atan(√e)/√e
        return T::one() - e / T::lit(3.0) + e * e / T::lit(5.0) - e * e * e / T::lit(7.0);
    }
    if e > T::zero() {
        let s = e.sqrt();
        s.atan() / s
    } else {
        let s = (-e).sqrt();
        s.atanh() / s
    }
}

fn carlson_rj_pv<T: Real>(x: T, y: T, z: T, p: T) -> Result<T> {
    // the transformation needs y to be the middle argument
    let mut v = [x, y, z];
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let [x, y, z] = v;
    let q = y + (z - y) * (y - x) / (y - p);
    let three = T::lit(3.0);
    let mut rhs = (q - y) * carlson_rj(x, y, z, q)? - three * carlson_rf(x, y, z)?;
    let xyz = x * y * z;
    if xyz > T::zero() {
        let pq = p * q;
        rhs += three * (xyz / (x * z + pq)).sqrt() * carlson_rc(x * z + pq, pq)?;
    }
    Ok(rhs / (y - p))
}

/// Complete integral of the first kind `K(m)`, `m < 1`.
pub fn ellip_k<T: Real>(m: T) -> Result<T> {
    if !(m < T::one()) {
        return Err(domain(format!("K(m) needs m < 1, got {m}")));
    }
    if m < T::zero() {
        // K(m) = K(−m/(1−m)) / √(1−m)
        let s = T::one() - m;
        return Ok(carlson_rf(T::zero(), T::one() / s, T::one())? / s.sqrt());
    }
    carlson_rf(T::zero(), T::one() - m, T::one())
}

/// Complete integral of the third kind `Π(n|m)`, `m < 1`, `n ≠ 1`.
/// For `n > 1` the Cauchy principal value is returned.
pub fn ellip_pi<T: Real>(n: T, m: T) -> Result<T> {
    if !(m < T::one()) {
        return Err(domain(format!("Π(n|m) needs m < 1, got {m}")));
    }
    if n == T::one() {
        return Err(domain("Π(n|m) has a pole at n = 1"));
    }
    if n == T::zero() {
        return ellip_k(m);
    }
    let y = T::one() - m;
    Ok(carlson_rf(T::zero(), y, T::one())? + n / T::lit(3.0) * carlson_rj(T::zero(), y, T::one(), T::one() - n)?)
}
