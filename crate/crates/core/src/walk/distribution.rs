use crate::error::{domain, Result};
use crate::scalar::Real;

/// Position probabilities of a walker after `time` steps, stored densely
/// from `offset` upward.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionDistribution<T> {
    offset: i64,
    time: u64,
    probs: Vec<T>,
}

impl<T: Real> PositionDistribution<T> {
    pub(crate) fn from_dense(offset: i64, time: u64, probs: Vec<T>) -> Self {
        Self { offset, time, probs }
    }

    /// Validated constructor: entries in [0, 1] summing to one.
    pub fn from_probs(offset: i64, time: u64, probs: Vec<T>) -> Result<Self> {
        if probs.iter().any(|p| !(*p >= T::zero() && *p <= T::one() + T::PROBABILITY_TOL)) {
            return Err(domain("probabilities must lie in [0, 1]"));
        }
        let total: T = probs.iter().copied().sum();
        if (total - T::one()).abs() > T::PROBABILITY_TOL {
            return Err(domain(format!("probabilities sum to {total}")));
        }
        Ok(Self { offset, time, probs })
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn min_position(&self) -> i64 {
        self.offset
    }

    pub fn max_position(&self) -> i64 {
        self.offset + self.probs.len() as i64 - 1
    }

    #[inline]
    pub fn get(&self, m: i64) -> T {
        let i = m - self.offset;
        if i < 0 || i as usize >= self.probs.len() {
            T::zero()
        } else {
            self.probs[i as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        self.probs.iter().enumerate().map(move |(i, p)| (self.offset + i as i64, *p))
    }

    pub fn total(&self) -> T {
        self.probs.iter().copied().sum()
    }

    pub fn mean(&self) -> T {
        self.iter().map(|(m, p)| T::from_int(m) * p).sum()
    }

    pub fn variance(&self) -> T {
        let mu = self.mean();
        self.iter()
            .map(|(m, p)| {
                let x = T::from_int(m) - mu;
                x * x * p
            })
            .sum()
    }

    /// Standard deviation of the position about its mean.
    pub fn stddev(&self) -> T {
        self.variance().sqrt()
    }

    /// Same distribution shifted by `shift` sites.
    pub fn translated(&self, shift: i64) -> Self {
        Self { offset: self.offset + shift, time: self.time, probs: self.probs.clone() }
    }

    /// Mean of `P` over the sites of `[start, start + len)` that can be
    /// occupied (parity of the light-cone edge). Slowly varying envelopes
    /// are densities on this sublattice.
    pub fn occupied_window_mean(&self, start: i64, len: usize) -> T {
        let mut sum = T::zero();
        let mut count = 0usize;
        for m in start..start + len as i64 {
            if (m - self.offset).rem_euclid(2) == 0 {
                sum += self.get(m);
                count += 1;
            }
        }
        if count == 0 {
            T::zero()
        } else {
            sum / T::from_usize(count).unwrap()
        }
    }

    /// Largest `|P(m) − P(2c − m)|` for reflection about site `c`.
    pub fn asymmetry_about(&self, c: i64) -> T {
        self.iter()
            .map(|(m, p)| (p - self.get(2 * c - m)).abs())
            .fold(T::zero(), T::max)
    }

    /// Site of the largest probability within `[lo, hi]`.
    pub fn argmax_in(&self, lo: i64, hi: i64) -> Option<i64> {
        self.iter()
            .filter(|(m, _)| *m >= lo && *m <= hi)
            .fold(None, |best: Option<(i64, T)>, (m, p)| match best {
                Some((_, bp)) if bp >= p => best,
                _ => Some((m, p)),
            })
            .map(|(m, _)| m)
    }
}
