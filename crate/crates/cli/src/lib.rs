//! Batch front end: every command renders its result to bytes so that the
//! binary, tests and other callers share one code path.

pub mod args;
pub mod commands;
pub mod output;

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

pub use args::{Cli, Command, Format, DEFAULT_SEED};

/// Rendered command output plus the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub exit_code: i32,
}

impl Outcome {
    pub fn ok(bytes: Vec<u8>) -> Self {
        Self { bytes, exit_code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Surface(a) => commands::surface::run(a),
        Command::Optimize(a) => commands::optimize::run(a),
        Command::State(a) => commands::state::run(a),
        Command::Verify(a) => commands::verify::run(a, cli.seed),
    }
}

pub fn out_path(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Surface(a) => a.output.out.as_deref(),
        Command::Optimize(a) => a.output.out.as_deref(),
        Command::State(a) => a.output.out.as_deref(),
        Command::Verify(a) => a.out.as_deref(),
    }
}

pub fn write_outcome(cli: &Cli, outcome: &Outcome) -> Result<()> {
    match out_path(cli) {
        Some(p) => fs::write(p, &outcome.bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&outcome.bytes).context("writing stdout")
        }
    }
}
