//! `hardcore`: command-line harness for the hard-core model toolkit.

mod commands;
mod format;
mod source;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CouplingArgs, DetectArgs, ExactArgs, GenArgs, SampleArgs, TorpidArgs};

/// Exit status for invalid configuration or input.
const EXIT_INVALID: u8 = 2;
/// Exit status when a size cap stops a computation.
const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hardcore",
    version,
    about = "Hard-core model experiments on bounded-degree graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partition function, marginals and mixing time by enumeration.
    Exact(ExactArgs),
    /// Glauber samples, or the monotone coupling against the product chain.
    Sample(SampleArgs),
    /// Red-blue cluster coupling statistics at one vertex.
    Coupling(CouplingArgs),
    /// Induced subdivided-claw detection and the claw growth lemmas.
    Detect(DetectArgs),
    /// Balance weights and conductance ratio of stretched expanders.
    Torpid(TorpidArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
}

/// Rejected configuration; reported with exit status 2.
#[derive(Debug)]
pub struct ConfigError(String);

impl ConfigError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<hardcore::Error>() {
        return if e.is_cap() { EXIT_CAP } else { EXIT_INVALID };
    }
    if err.downcast_ref::<ConfigError>().is_some() {
        return EXIT_INVALID;
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Exact(a) => commands::exact(a),
        Command::Sample(a) => commands::sample(a),
        Command::Coupling(a) => commands::coupling(a),
        Command::Detect(a) => commands::detect(a),
        Command::Torpid(a) => commands::torpid(a),
        Command::Gen(a) => commands::gen(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
