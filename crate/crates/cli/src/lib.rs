//! Command-line front end: simulate orbits, run verification suites, draw phase
//! portraits and print the invariant constants of a family.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 I/O error.

pub mod commands;
pub mod config;
pub mod format;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use config::{Format, RunArgs, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("verification failed: {0}")]
    SuiteFailed(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SuiteFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "kahan",
    version,
    about = "Kahan discretization of integrable planar quadratic systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate the Kahan map and write the trajectory
    Simulate(RunArgs),
    /// Run a verification suite and write a key=value report
    Verify(RunArgs),
    /// Run several orbits and write a phase portrait (CSV, JSON lines or SVG)
    Phase(RunArgs),
    /// Print the constants entering the modified Hamiltonian
    Constants(RunArgs),
}

/// Runs a parsed command, printing human-readable output to `stdout`.
/// Returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn std::io::Write) -> i32 {
    let result = match &cli.command {
        Command::Simulate(args) => {
            RunConfig::from_args(args).and_then(|c| commands::cmd_simulate(&c, stdout))
        }
        Command::Verify(args) => {
            RunConfig::from_args(args).and_then(|c| commands::cmd_verify(&c, stdout))
        }
        Command::Phase(args) => {
            RunConfig::from_args(args).and_then(|c| commands::cmd_phase(&c, stdout))
        }
        Command::Constants(args) => {
            RunConfig::from_args(args).and_then(|c| commands::cmd_constants(&c, stdout))
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
