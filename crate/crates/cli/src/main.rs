//! `granmech` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or config error.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::{Command, Flags, JobConfig};

#[derive(Debug, Parser)]
#[command(
    name = "granmech",
    version,
    about = "Strain-gradient stiffness identification for granular materials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match JobConfig::resolve(cli.command, &cli.flags) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let outcome = match commands::run(&config) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = output::render(&outcome.doc, config.format);
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.exit_code != 0 {
        eprintln!("verification failed; see the per-check report");
    }
    ExitCode::from(outcome.exit_code as u8)
}
