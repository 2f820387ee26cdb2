//! The three experiment recipes, each producing one or two tables.

use qwmeet::asymptotics::{meeting_elliptic, overlap_time, slow_envelope, EstimateKind, SlowEnvelopeCoin};
use qwmeet::classical::{cl_meet_total_gauss, cl_monte_carlo};
use qwmeet::sweep::{meeting_series_for, CoinLabel, OverallSweep, WalkerKind};
use qwmeet::walk::{hadamard, WalkerState};

use crate::config::{Job, RunConfig};
use crate::error::CliError;
use crate::oracle;
use crate::output::{Cell, Table};

/// Tables and a one-line summary for stderr.
pub struct Outcome {
    pub main: Table,
    pub width: Option<Table>,
    pub summary: String,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.job {
        Job::SingleWalk { coin } => single_walk(cfg, *coin),
        Job::MeetingSeries { kind, d, monte_carlo } => meeting_series(cfg, *kind, *d, *monte_carlo),
        Job::OverallSweep { kinds, grid } => overall_sweep(cfg, kinds, grid),
    }
}

fn envelope_coin(coin: CoinLabel) -> SlowEnvelopeCoin {
    match coin {
        CoinLabel::L => SlowEnvelopeCoin::L,
        CoinLabel::R => SlowEnvelopeCoin::R,
        CoinLabel::S => SlowEnvelopeCoin::Symmetric,
    }
}

fn push_oracle_meta(table: &mut Table, checked_to: u64, worst: f64) {
    table.meta.push(("oracle_steps".into(), checked_to.to_string()));
    table.meta.push(("oracle_max_deviation".into(), format!("{worst:e}")));
}

fn single_walk(cfg: &RunConfig, coin: CoinLabel) -> Result<Outcome, CliError> {
    let t = cfg.steps;
    let p = WalkerState::init_localized(0, coin.spinor::<f64>())?.evolve(t, &hadamard()).position_distribution();
    let mut table = Table::new(cfg.meta(), &["m", "P", "envelope"]);
    if cfg.oracle {
        let checked = t.min(oracle::ORACLE_STEPS);
        let reference = oracle::single_walker(coin, checked)?;
        let fast = if checked == t {
            p.clone()
        } else {
            WalkerState::init_localized(0, coin.spinor::<f64>())?.evolve(checked, &hadamard()).position_distribution()
        };
        let worst = (-(checked as i64)..=checked as i64).map(|m| (reference.get(m) - fast.get(m)).abs()).fold(0.0, f64::max);
        push_oracle_meta(&mut table, checked, oracle::check("single-walker distribution", worst)?);
    }
    let env = envelope_coin(coin);
    let ti = t as i64;
    for m in -ti..=ti {
        let e = slow_envelope(m as f64, t as f64, env).ok();
        table.push(vec![Cell::Int(m), Cell::Num(p.get(m)), e.into()]);
    }
    let summary = format!("single walker ({}) at t={t}: total probability {:.15}", coin.name(), p.total());
    Ok(Outcome { main: table, width: None, summary })
}

fn estimate_kind(kind: WalkerKind) -> Option<EstimateKind> {
    match kind {
        WalkerKind::RL => Some(EstimateKind::RL),
        WalkerKind::S => Some(EstimateKind::S),
        WalkerKind::LR => Some(EstimateKind::LR),
        _ => None,
    }
}

/// Elliptic estimate past the overlap time for the three product kinds,
/// Gaussian estimate for the classical pair.
fn estimate(kind: WalkerKind, t: u64, d: u64) -> Result<Option<f64>, CliError> {
    if kind == WalkerKind::Classical {
        return Ok(Some(cl_meet_total_gauss(t, d)?));
    }
    match estimate_kind(kind) {
        Some(k) if d >= 1 && t as f64 > overlap_time::<f64>(d) => Ok(Some(meeting_elliptic(k, t as f64, d)?.value)),
        _ => Ok(None),
    }
}

fn meeting_series(
    cfg: &RunConfig,
    kind: WalkerKind,
    d: u64,
    monte_carlo: Option<(u64, u64)>,
) -> Result<Outcome, CliError> {
    let horizon = cfg.steps;
    let series = meeting_series_for(kind, d, horizon, &hadamard::<f64>())?;
    let mut columns = vec!["t", "M", "Mbar", "estimate"];
    if monte_carlo.is_some() {
        columns.extend(["M_mc", "M_mc_stderr"]);
    }
    let mut table = Table::new(cfg.meta(), &columns);
    if cfg.oracle {
        let checked = horizon.min(oracle::ORACLE_STEPS);
        let reference = oracle::meeting_series(kind, d, checked)?.expect("quantum kinds only");
        let worst = reference.iter().enumerate().map(|(t, r)| (r - series.at(t)).abs()).fold(0.0, f64::max);
        push_oracle_meta(&mut table, checked, oracle::check("meeting series", worst)?);
    }
    for t in 1..=horizon {
        let mut row = vec![
            Cell::Int(t as i64),
            Cell::Num(series.at(t as usize)),
            Cell::Num(series.overall_at(t as usize)),
            estimate(kind, t, d)?.into(),
        ];
        if let Some((trials, seed)) = monte_carlo {
            let e = cl_monte_carlo(t, d, trials, seed)?;
            row.extend([Cell::Num(e.probability), Cell::Num(e.std_error)]);
        }
        table.push(row);
    }
    let (tp, mp) = series.peak();
    let summary = format!(
        "{} d={d}: peak M={mp:.6} at t={tp}, overall to T={horizon} is {:.6}",
        kind.name(),
        series.overall_at(horizon as usize)
    );
    Ok(Outcome { main: table, width: None, summary })
}

/// Quantum columns of the sweep recomputed from the oracle for small `d`.
const SWEEP_ORACLE_MAX_D: u64 = 3;

fn overall_sweep(cfg: &RunConfig, kinds: &[WalkerKind], grid: &[u64]) -> Result<Outcome, CliError> {
    let horizon = cfg.steps;
    let mut horizons = grid.to_vec();
    horizons.push(horizon);
    let sweep = OverallSweep::run(kinds, &horizons, &hadamard::<f64>())?;

    let names: Vec<String> = kinds.iter().map(|k| k.name()).collect();
    let mut columns = vec!["d".to_string(), "separation".to_string()];
    columns.extend(names.iter().cloned());
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(cfg.meta(), &column_refs);
    if cfg.oracle {
        let checked = horizon.min(oracle::ORACLE_STEPS);
        let mut worst = 0.0f64;
        for d in 0..=SWEEP_ORACLE_MAX_D.min(horizon) {
            for (k, &kind) in kinds.iter().enumerate() {
                let Some(values) = oracle::meeting_series(kind, d, checked)? else { continue };
                let reference = qwmeet::distinguishable::overall_meeting(&values, checked as usize)?;
                let fast = if checked == horizon {
                    sweep.overall(horizon, d, k)
                } else {
                    meeting_series_for(kind, d, checked, &hadamard::<f64>())?.overall_at(checked as usize)
                };
                worst = worst.max((reference - fast).abs());
            }
        }
        push_oracle_meta(&mut table, checked, oracle::check("overall meeting", worst)?);
    }
    for (d, values) in sweep.rows(horizon) {
        let mut row = vec![Cell::Int(d as i64), Cell::Int(2 * d as i64)];
        row.extend(values.into_iter().map(Cell::Num));
        table.push(row);
    }

    let mut width_meta = cfg.meta();
    width_meta.push(("table".into(), "width".into()));
    width_meta.push(("width".into(), "max_d_with_Mbar_at_least_0.5".into()));
    let mut width_columns = vec!["T".to_string()];
    width_columns.extend(names.iter().map(|n| format!("width_{n}")));
    let width_refs: Vec<&str> = width_columns.iter().map(String::as_str).collect();
    let mut width = Table::new(width_meta, &width_refs);
    for &h in sweep.horizons() {
        let mut row = vec![Cell::Int(h as i64)];
        row.extend((0..kinds.len()).map(|k| sweep.width(h, k).map_or(Cell::Empty, |w| Cell::Int(w as i64))));
        width.push(row);
    }

    let widths: Vec<String> = (0..kinds.len())
        .map(|k| format!("{}={}", names[k], sweep.width(horizon, k).map_or("-".into(), |w| w.to_string())))
        .collect();
    let summary = format!("overall meeting at T={horizon} for d=0..={horizon}; widths {}", widths.join(" "));
    Ok(Outcome { main: table, width: Some(width), summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_domains() {
        assert_eq!(estimate(WalkerKind::RL, 14, 10).unwrap(), None);
        assert!(estimate(WalkerKind::RL, 15, 10).unwrap().unwrap() > 0.0);
        assert_eq!(estimate(WalkerKind::RL, 15, 0).unwrap(), None);
        assert_eq!(estimate(WalkerKind::Bell(qwmeet::distinguishable::BellState::PsiMinus), 50, 3).unwrap(), None);
        assert!(estimate(WalkerKind::Classical, 1, 0).unwrap().is_some());
    }
}
