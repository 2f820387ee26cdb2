use crate::error::{domain, Result};
use crate::scalar::Real;

/// `M̄(T) = 1 − Π_{t=1}^{T} (1 − M(t))`, accumulated as a sum of
/// `ln(1 − M(t))`. `series[t]` is `M(t)`; `series[0]` is not used.
pub fn overall_meeting<T: Real>(series: &[T], horizon: usize) -> Result<T> {
    if horizon >= series.len() {
        return Err(domain(format!("horizon {horizon} beyond a series of length {}", series.len())));
    }
    let mut log_miss = T::zero();
    for &m in &series[1..=horizon] {
        let m = checked_probability(m)?;
        if m == T::one() {
            return Ok(T::one());
        }
        log_miss += (-m).ln_1p();
    }
    Ok(-log_miss.exp_m1())
}

/// Accepts values within the probability tolerance of `[0, 1]` and clips
/// them into it.
pub(crate) fn checked_probability<T: Real>(m: T) -> Result<T> {
    if !(m >= -T::PROBABILITY_TOL && m <= T::one() + T::PROBABILITY_TOL) {
        return Err(domain(format!("meeting probability {m} outside [0, 1]")));
    }
    Ok(m.max(T::zero()).min(T::one()))
}

/// `M(t)` for `t = 0..=T` and the running overall probability `M̄(T')` for
/// `T' = 1..=T`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeetingSeries<T> {
    values: Vec<T>,
    overall: Vec<T>,
}

impl<T: Real> MeetingSeries<T> {
    /// Values within the probability tolerance of `[0, 1]` are clipped into it.
    pub fn from_values(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(domain("empty meeting series"));
        }
        let values = values.into_iter().map(checked_probability).collect::<Result<Vec<T>>>()?;
        let mut overall = Vec::with_capacity(values.len() - 1);
        let mut log_miss = T::zero();
        let mut certain = false;
        for &m in &values[1..] {
            certain |= m == T::one();
            log_miss += (-m).ln_1p();
            overall.push(if certain { T::one() } else { -log_miss.exp_m1() });
        }
        Ok(Self { values, overall })
    }

    /// Largest time in the series.
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    /// `M(t)` indexed by `t`.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `M̄(T')` for `T' = 1..=T`, stored at index `T' − 1`.
    pub fn overall(&self) -> &[T] {
        &self.overall
    }

    pub fn at(&self, t: usize) -> T {
        self.values[t]
    }

    /// `M̄(T')`; zero for `T' = 0`.
    pub fn overall_at(&self, horizon: usize) -> T {
        if horizon == 0 {
            T::zero()
        } else {
            self.overall[horizon - 1]
        }
    }

    /// `(t, M(t))` of the largest value with `t ≥ 1`.
    pub fn peak(&self) -> (usize, T) {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .fold((0, T::neg_infinity()), |best, (t, &v)| if v > best.1 { (t, v) } else { best })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product() {
        assert_eq!(overall_meeting(&[0.3, 0.0, 0.0, 0.0], 3).unwrap(), 0.0);
    }

    #[test]
    fn certain_meeting() {
        assert_eq!(overall_meeting(&[0.0f64, 0.2, 1.0, 0.1], 3).unwrap(), 1.0);
    }

    #[test]
    fn two_halves() {
        let v = overall_meeting(&[0.0f64, 0.5, 0.5], 2).unwrap();
        assert!((v - 0.75).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(overall_meeting(&[0.0f64, 1.5], 1).is_err());
        assert!(overall_meeting(&[0.0f64, -0.2], 1).is_err());
        assert!(MeetingSeries::from_values(vec![0.0, 0.1, f64::NAN]).is_err());
    }

    #[test]
    fn series_excludes_time_zero() {
        let s = MeetingSeries::from_values(vec![1.0f64, 0.5, 0.5]).unwrap();
        assert!((s.overall_at(1) - 0.5).abs() < 1e-15);
        assert!((s.overall_at(2) - 0.75).abs() < 1e-15);
        assert_eq!(s.peak(), (1, 0.5));
    }
}
