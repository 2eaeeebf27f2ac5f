use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use zariski::harness::{self, load_store, load_system};
use zariski::numbers::Rational;
use zariski::separation::GadgetMode;
use zariski::{Error, Result};

#[derive(Parser)]
#[command(name = "zariski", version, about = "Thompson-group elements, inequation systems and separation gadgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word at an element of a store.
    Eval {
        /// JSON object mapping names to elements.
        #[arg(long)]
        store: PathBuf,
        /// Word in `x` and store names, e.g. "a x^-2 b".
        #[arg(long)]
        word: String,
        /// Store name of the element substituted for `x`.
        #[arg(long)]
        x: String,
    },
    /// Find a witness for a system of inequations over V_n.
    Solve {
        system: PathBuf,
        #[arg(long)]
        seed: u64,
        /// Alphabet size when the system names no elements.
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Also search this many random elements as an independent check.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Find a common witness of two systems over V_n.
    Intersect {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Build and audit the open neighbourhood of the identity for epsilon.
    Gadget {
        #[arg(long)]
        epsilon: Rational,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value = "interval")]
        mode: GadgetMode,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
    },
    /// Separate two distinct elements of a store by open sets.
    Separate {
        #[arg(long)]
        store: PathBuf,
        f: String,
        g: String,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
}

fn emit<T: Serialize>(report: &T, out: Option<&PathBuf>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Runs the command and returns the exit status for a successful run.
fn run(cli: Cli) -> Result<u8> {
    let out = cli.out.as_ref();
    match cli.command {
        Command::Eval { store, word, x } => {
            let store = load_store(&store)?;
            emit(&harness::eval_command(&store, &word, &x)?, out)?;
        }
        Command::Solve { system, seed, n, budget } => {
            let report = harness::solve_command(&load_system(&system)?, seed, n, budget)?;
            emit(&report, out)?;
        }
        Command::Intersect { first, second, seed, n } => {
            let report = harness::intersect_command(&load_system(&first)?, &load_system(&second)?, seed, n)?;
            emit(&report, out)?;
        }
        Command::Gadget { epsilon, n, mode, trials, seed, parallel } => {
            let report = harness::gadget_command(&epsilon, n, mode, trials, seed, parallel)?;
            emit(&report, out)?;
            if !report.passed {
                eprintln!("error: the gadget audit found violations");
                return Ok(Error::InvariantBreach(String::new()).exit_code() as u8);
            }
        }
        Command::Separate { store, f, g, n } => {
            let report = harness::separate_command(&load_store(&store)?, &f, &g, n)?;
            emit(&report, out)?;
            if !report.separated {
                eprintln!("error: the open sets do not separate the elements");
                return Ok(Error::InvariantBreach(String::new()).exit_code() as u8);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
