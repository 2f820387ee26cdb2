//! Command-line arguments and their validation into a run configuration.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use qwmeet::distinguishable::BellState;
use qwmeet::indistinguishable::ExchangeClass;
use qwmeet::sweep::{CoinLabel, WalkerKind};

use crate::error::{usage, CliError};
use crate::output::{Format, Sink};

pub const OUT_DIR_ENV: &str = "QWMEET_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Single-walker distribution at t = steps with its slow envelope.
    SingleWalk,
    /// M(t), overall M(t) and the asymptotic estimate for t = 1..=steps.
    MeetingSeries,
    /// Overall meeting probability against separation, plus a width table.
    OverallSweep,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::SingleWalk => "single-walk",
            Command::MeetingSeries => "meeting-series",
            Command::OverallSweep => "overall-sweep",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoinArg {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "S", alias = "s")]
    S,
}

impl From<CoinArg> for CoinLabel {
    fn from(c: CoinArg) -> Self {
        match c {
            CoinArg::L => CoinLabel::L,
            CoinArg::R => CoinLabel::R,
            CoinArg::S => CoinLabel::S,
        }
    }
}

/// Initial-state selector as typed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Rl,
    S,
    Lr,
    Bell(BellState),
    Exchange(ExchangeClass),
    Classical,
}

pub fn parse_kind(s: &str) -> Result<KindArg, String> {
    Ok(match s {
        "RL" | "rl" => KindArg::Rl,
        "S" | "s" => KindArg::S,
        "LR" | "lr" => KindArg::Lr,
        "psi+" | "ψ+" => KindArg::Bell(BellState::PsiPlus),
        "psi-" | "ψ-" => KindArg::Bell(BellState::PsiMinus),
        "phi+" | "φ+" => KindArg::Bell(BellState::PhiPlus),
        "phi-" | "φ-" => KindArg::Bell(BellState::PhiMinus),
        "boson" => KindArg::Exchange(ExchangeClass::Boson),
        "fermion" => KindArg::Exchange(ExchangeClass::Fermion),
        "classical" => KindArg::Classical,
        _ => return Err("expected RL, S, LR, psi+, psi-, phi+, phi-, boson, fermion or classical".into()),
    })
}

#[derive(Debug, Parser)]
#[command(name = "qwmeet", version, about = "Meeting probabilities of two walkers in the Hadamard walk on the line")]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Command,
    /// Initial state: RL, S, LR, psi+, psi-, phi+, phi-, boson, fermion, classical.
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<KindArg>,
    /// Half-separation; the walkers start at 0 and 2d.
    #[arg(long)]
    pub d: Option<u64>,
    /// Number of steps T (at least 1).
    #[arg(long, default_value_t = 100)]
    pub steps: u64,
    /// Output file; `-` writes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for the default file name when --out is absent.
    #[arg(long, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Seed for the classical Monte Carlo columns.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo trials per time step (classical meeting series only).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Cross-check against the tensor-product joint evolution.
    #[arg(long)]
    pub oracle: bool,
    /// No summary on stderr.
    #[arg(long)]
    pub quiet: bool,
    /// First walker's coin for boson/fermion kinds, or the walker's coin in single-walk.
    #[arg(long, value_enum)]
    pub coin1: Option<CoinArg>,
    /// Second walker's coin for boson/fermion kinds.
    #[arg(long, value_enum)]
    pub coin2: Option<CoinArg>,
    /// Horizons for the overall-sweep width table, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Job {
    SingleWalk { coin: CoinLabel },
    MeetingSeries { kind: WalkerKind, d: u64, monte_carlo: Option<(u64, u64)> },
    OverallSweep { kinds: Vec<WalkerKind>, grid: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub job: Job,
    pub steps: u64,
    pub sink: Sink,
    pub format: Format,
    pub oracle: bool,
    pub quiet: bool,
}

impl RunConfig {
    /// `key=value` pairs recorded in every output file.
    pub fn meta(&self) -> Vec<(String, String)> {
        let mut m = vec![
            ("tool".to_string(), "qwmeet".to_string()),
            ("version".into(), env!("CARGO_PKG_VERSION").into()),
        ];
        let mut put = |k: &str, v: String| m.push((k.into(), v));
        match &self.job {
            Job::SingleWalk { coin } => {
                put("command", Command::SingleWalk.name().into());
                put("coin", coin.name().into());
            }
            Job::MeetingSeries { kind, d, monte_carlo } => {
                put("command", Command::MeetingSeries.name().into());
                put("kind", kind.name());
                put("d", d.to_string());
                if let Some((trials, seed)) = monte_carlo {
                    put("trials", trials.to_string());
                    put("seed", seed.to_string());
                }
            }
            Job::OverallSweep { kinds, .. } => {
                put("command", Command::OverallSweep.name().into());
                put("kinds", kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join(";"));
            }
        }
        put("steps", self.steps.to_string());
        put("walk", "hadamard".into());
        put("oracle", self.oracle.to_string());
        m
    }
}

fn resolve_kind(kind: KindArg, coin1: Option<CoinArg>, coin2: Option<CoinArg>) -> Result<WalkerKind, CliError> {
    if !matches!(kind, KindArg::Exchange(_)) && (coin1.is_some() || coin2.is_some()) {
        return Err(usage("--coin1/--coin2 apply only to boson and fermion kinds"));
    }
    Ok(match kind {
        KindArg::Rl => WalkerKind::RL,
        KindArg::S => WalkerKind::S,
        KindArg::Lr => WalkerKind::LR,
        KindArg::Bell(b) => WalkerKind::Bell(b),
        KindArg::Exchange(c) => {
            WalkerKind::Exchange(c, coin1.map_or(CoinLabel::R, Into::into), coin2.map_or(CoinLabel::L, Into::into))
        }
        KindArg::Classical => WalkerKind::Classical,
    })
}

fn reject(present: bool, flag: &str, command: Command) -> Result<(), CliError> {
    if present {
        Err(usage(format!("{flag} is not valid for --command {}", command.name())))
    } else {
        Ok(())
    }
}

/// Width-table horizons when no grid is given: quarters of T.
fn default_grid(steps: u64) -> Vec<u64> {
    let mut g: Vec<u64> = (1..=4).map(|q| steps * q / 4).filter(|&h| h >= 1).collect();
    g.dedup();
    g
}

fn default_file_name(job: &Job, steps: u64, format: Format) -> String {
    let stem = match job {
        Job::SingleWalk { coin } => format!("single-walk-{}-T{steps}", coin.name()),
        Job::MeetingSeries { kind, d, .. } => format!("meeting-series-{}-d{d}-T{steps}", kind.name()),
        Job::OverallSweep { kinds, .. } => {
            format!("overall-sweep-{}-T{steps}", kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join("_"))
        }
    };
    format!("{stem}.{}", format.extension())
}

impl TryFrom<Args> for RunConfig {
    type Error = CliError;

    fn try_from(a: Args) -> Result<Self, CliError> {
        if a.steps == 0 {
            return Err(usage("--steps must be at least 1"));
        }
        let c = a.command;
        if c != Command::OverallSweep {
            reject(!a.grid.is_empty(), "--grid", c)?;
        }
        if c != Command::MeetingSeries {
            reject(a.trials.is_some(), "--trials", c)?;
            reject(a.seed.is_some(), "--seed", c)?;
        }
        let job = match c {
            Command::SingleWalk => {
                reject(a.kind.is_some(), "--kind", c)?;
                reject(a.d.is_some(), "--d", c)?;
                reject(a.coin2.is_some(), "--coin2", c)?;
                Job::SingleWalk { coin: a.coin1.map_or(CoinLabel::S, Into::into) }
            }
            Command::MeetingSeries => {
                let kind = a.kind.ok_or_else(|| usage("--command meeting-series needs --kind"))?;
                let kind = resolve_kind(kind, a.coin1, a.coin2)?;
                let classical = kind == WalkerKind::Classical;
                if !classical {
                    reject(a.trials.is_some(), "--trials", c)?;
                }
                if classical && a.oracle {
                    return Err(usage("--oracle needs a quantum kind"));
                }
                let monte_carlo = match (a.trials, a.seed) {
                    (Some(0), _) => return Err(usage("--trials must be at least 1")),
                    (Some(n), seed) => Some((n, seed.unwrap_or(0))),
                    (None, Some(_)) => return Err(usage("--seed needs --trials")),
                    (None, None) => None,
                };
                Job::MeetingSeries { kind, d: a.d.unwrap_or(10), monte_carlo }
            }
            Command::OverallSweep => {
                reject(a.d.is_some(), "--d", c)?;
                let mut kinds = match a.kind {
                    Some(k) => vec![resolve_kind(k, a.coin1, a.coin2)?],
                    None => {
                        resolve_kind(KindArg::Rl, a.coin1, a.coin2)?;
                        vec![WalkerKind::RL, WalkerKind::S, WalkerKind::LR]
                    }
                };
                if !kinds.contains(&WalkerKind::Classical) {
                    kinds.push(WalkerKind::Classical);
                } else if a.oracle {
                    return Err(usage("--oracle needs a quantum kind"));
                }
                let mut grid = if a.grid.is_empty() { default_grid(a.steps) } else { a.grid };
                if grid.contains(&0) {
                    return Err(usage("--grid horizons must be at least 1"));
                }
                grid.sort_unstable();
                grid.dedup();
                Job::OverallSweep { kinds, grid }
            }
        };
        let sink = match a.out {
            Some(p) if p.as_os_str() == "-" => Sink::Stdout,
            Some(p) => Sink::File(p),
            None => {
                let name = default_file_name(&job, a.steps, a.format);
                Sink::File(a.out_dir.map_or_else(|| PathBuf::from(&name), |dir| dir.join(&name)))
            }
        };
        Ok(RunConfig { job, steps: a.steps, sink, format: a.format, oracle: a.oracle, quiet: a.quiet })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig, CliError> {
        let mut argv = vec!["qwmeet"];
        argv.extend_from_slice(args);
        RunConfig::try_from(Args::try_parse_from(argv).expect("parses"))
    }

    #[test]
    fn kinds_parse() {
        assert_eq!(parse_kind("psi-").unwrap(), KindArg::Bell(BellState::PsiMinus));
        assert_eq!(parse_kind("φ+").unwrap(), KindArg::Bell(BellState::PhiPlus));
        assert!(parse_kind("psi").is_err());
    }

    #[test]
    fn exchange_coins_default_to_rl() {
        let c = config(&["--command", "meeting-series", "--kind", "fermion", "--out", "-"]).unwrap();
        assert_eq!(
            c.job,
            Job::MeetingSeries {
                kind: WalkerKind::Exchange(ExchangeClass::Fermion, CoinLabel::R, CoinLabel::L),
                d: 10,
                monte_carlo: None
            }
        );
    }

    #[test]
    fn mismatches_are_usage_errors() {
        for args in [
            &["--command", "single-walk", "--kind", "RL"][..],
            &["--command", "meeting-series"],
            &["--command", "meeting-series", "--kind", "RL", "--coin1", "S"],
            &["--command", "meeting-series", "--kind", "RL", "--trials", "10"],
            &["--command", "meeting-series", "--kind", "classical", "--seed", "3"],
            &["--command", "meeting-series", "--kind", "classical", "--oracle"],
            &["--command", "overall-sweep", "--d", "3"],
            &["--command", "overall-sweep", "--grid", "0,10"],
            &["--command", "single-walk", "--steps", "0"],
        ] {
            assert_eq!(config(args).unwrap_err().exit_code(), 2, "{args:?}");
        }
    }

    #[test]
    fn sweep_defaults() {
        let c = config(&["--command", "overall-sweep", "--steps", "10", "--out-dir", "res"]).unwrap();
        assert_eq!(
            c.job,
            Job::OverallSweep {
                kinds: vec![WalkerKind::RL, WalkerKind::S, WalkerKind::LR, WalkerKind::Classical],
                grid: vec![2, 5, 7, 10]
            }
        );
        assert_eq!(c.sink, Sink::File(PathBuf::from("res/overall-sweep-RL_S_LR_classical-T10.csv")));
        assert_eq!(default_grid(2), vec![1, 2]);
    }
}
