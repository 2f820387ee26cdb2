//! `qwmeet`: experiment runner for two-walker meeting probabilities.

mod commands;
mod config;
mod error;
mod oracle;
mod output;

use clap::Parser;

use crate::config::{Args, RunConfig};
use crate::error::CliError;
use crate::output::Sink;

fn execute(args: Args) -> Result<(), CliError> {
    let cfg = RunConfig::try_from(args)?;
    let outcome = commands::run(&cfg)?;
    cfg.sink.write(&outcome.main.render(cfg.format))?;
    let mut written = vec![cfg.sink.describe()];
    if let Some(width) = &outcome.width {
        let sink = cfg.sink.sibling("width");
        if sink == Sink::Stdout {
            sink.write("\n")?;
        }
        sink.write(&width.render(cfg.format))?;
        written.push(sink.describe());
    }
    if !cfg.quiet {
        eprintln!("{}", outcome.summary);
        eprintln!("wrote {}", written.join(", "));
    }
    Ok(())
}

fn main() {
    let args = Args::try_parse().unwrap_or_else(|e| e.exit());
    if let Err(e) = execute(args) {
        eprintln!("qwmeet: {e}");
        std::process::exit(e.exit_code());
    }
}
