//! Meeting series and overall-probability sweeps over initial kinds and
//! separations.

use rayon::prelude::*;

use crate::classical::cl_meet_total;
use crate::distinguishable::{decompose, meeting_series_many, BellState, MeetingSeries, TwoWalkerSpec};
use crate::error::Result;
use crate::indistinguishable::{meeting_series_indist, ExchangeClass};
use crate::scalar::Real;
use crate::walk::{CoinOperator, Spinor};

/// Named single-walker coin states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoinLabel {
    L,
    R,
    S,
}

impl CoinLabel {
    pub fn spinor<T: Real>(self) -> Spinor<T> {
        match self {
            CoinLabel::L => Spinor::left(),
            CoinLabel::R => Spinor::right(),
            CoinLabel::S => Spinor::symmetric(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoinLabel::L => "L",
            CoinLabel::R => "R",
            CoinLabel::S => "S",
        }
    }
}

/// Initial condition of a pair, without its separation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WalkerKind {
    /// Distinguishable walkers with product coins, first walker on the left.
    Factorized(CoinLabel, CoinLabel),
    Bell(BellState),
    Exchange(ExchangeClass, CoinLabel, CoinLabel),
    Classical,
}

impl WalkerKind {
    pub const RL: WalkerKind = WalkerKind::Factorized(CoinLabel::R, CoinLabel::L);
    pub const S: WalkerKind = WalkerKind::Factorized(CoinLabel::S, CoinLabel::S);
    pub const LR: WalkerKind = WalkerKind::Factorized(CoinLabel::L, CoinLabel::R);

    pub fn name(self) -> String {
        match self {
            WalkerKind::RL => "RL".into(),
            WalkerKind::S => "S".into(),
            WalkerKind::LR => "LR".into(),
            WalkerKind::Factorized(a, b) => format!("{}{}", a.name(), b.name()),
            WalkerKind::Bell(b) => b.name().into(),
            WalkerKind::Exchange(c, a, b) => format!("{}-{}{}", c.name(), a.name(), b.name()),
            WalkerKind::Classical => "classical".into(),
        }
    }

    /// Two-walker start for the quantum kinds.
    pub fn spec<T: Real>(self, d: u64) -> Option<TwoWalkerSpec<T>> {
        match self {
            WalkerKind::Factorized(a, b) | WalkerKind::Exchange(_, a, b) => Some(
                TwoWalkerSpec::factorized(d, a.spinor(), b.spinor()).expect("named coin states are normalized"),
            ),
            WalkerKind::Bell(b) => Some(TwoWalkerSpec::bell(d, b)),
            WalkerKind::Classical => None,
        }
    }
}

fn classical_series<T: Real>(d: u64, horizon: u64) -> Result<MeetingSeries<T>> {
    MeetingSeries::from_values((0..=horizon).map(|t| cl_meet_total(t, d)).collect())
}

/// `M(t)` for `t = 0..=horizon`.
pub fn meeting_series_for<T: Real>(
    kind: WalkerKind,
    d: u64,
    horizon: u64,
    coin: &CoinOperator<T>,
) -> Result<MeetingSeries<T>> {
    match kind {
        WalkerKind::Classical => classical_series(d, horizon),
        WalkerKind::Exchange(stat, ..) => meeting_series_indist(stat, &kind.spec(d).expect("quantum"), horizon, coin),
        _ => {
            let dec = decompose(&kind.spec::<T>(d).expect("quantum"));
            meeting_series_many(std::slice::from_ref(&dec), horizon, coin).map(|mut v| v.remove(0))
        }
    }
}

/// Overall meeting probabilities `M̄(T, d)` for every `d = 0..=T`, each
/// horizon `T` on a grid and each kind.
#[derive(Clone, Debug, PartialEq)]
pub struct OverallSweep<T> {
    horizons: Vec<u64>,
    kinds: Vec<WalkerKind>,
    // [d][kind] -> series over the largest horizon
    series: Vec<Vec<MeetingSeries<T>>>,
}

impl<T: Real> OverallSweep<T> {
    pub fn run(kinds: &[WalkerKind], horizons: &[u64], coin: &CoinOperator<T>) -> Result<Self> {
        let mut horizons = horizons.to_vec();
        horizons.sort_unstable();
        horizons.dedup();
        let max_t = horizons.last().copied().unwrap_or(0);
        let ds: Vec<u64> = (0..=max_t).collect();

        // distinguishable kinds share one basis evolution across all d
        let shared: Vec<(usize, u64)> = kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| matches!(k, WalkerKind::Factorized(..) | WalkerKind::Bell(_)))
            .flat_map(|(i, _)| ds.iter().map(move |&d| (i, d)))
            .collect();
        let decs: Vec<_> = shared.iter().map(|&(i, d)| decompose(&kinds[i].spec::<T>(d).expect("quantum"))).collect();
        let mut shared_series = meeting_series_many(&decs, max_t, coin)?.into_iter();

        let mut series: Vec<Vec<Option<MeetingSeries<T>>>> = vec![vec![None; kinds.len()]; ds.len()];
        for &(i, d) in &shared {
            series[d as usize][i] = shared_series.next();
        }
        let rest: Vec<(usize, u64)> = kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| matches!(k, WalkerKind::Exchange(..) | WalkerKind::Classical))
            .flat_map(|(i, _)| ds.iter().map(move |&d| (i, d)))
            .collect();
        let computed: Vec<Result<MeetingSeries<T>>> =
            rest.par_iter().map(|&(i, d)| meeting_series_for(kinds[i], d, max_t, coin)).collect();
        for (&(i, d), s) in rest.iter().zip(computed) {
            series[d as usize][i] = Some(s?);
        }
        let series = series
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.expect("every cell computed")).collect())
            .collect();
        Ok(Self { horizons, kinds: kinds.to_vec(), series })
    }

    pub fn horizons(&self) -> &[u64] {
        &self.horizons
    }

    pub fn kinds(&self) -> &[WalkerKind] {
        &self.kinds
    }

    /// `M̄(T, d)` for the `k`-th kind.
    pub fn overall(&self, horizon: u64, d: u64, k: usize) -> T {
        self.series[d as usize][k].overall_at(horizon as usize)
    }

    /// Rows `(d, [M̄ per kind])` for `d = 0..=T`.
    pub fn rows(&self, horizon: u64) -> Vec<(u64, Vec<T>)> {
        (0..=horizon).map(|d| (d, (0..self.kinds.len()).map(|k| self.overall(horizon, d, k)).collect())).collect()
    }

    /// Largest `d` with `M̄(T, d) ≥ 1/2`, if any.
    pub fn width(&self, horizon: u64, k: usize) -> Option<u64> {
        let half = T::lit(0.5);
        (0..=horizon).rev().find(|&d| self.overall(horizon, d, k) >= half)
    }
}
