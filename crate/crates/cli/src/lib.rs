//! Command-line front end for the `vdecomp-core` engine.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::commands::{execute, Command};
use crate::config::{ConfigArgs, RunConfig};
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "vdecomp", version, about = "Decomposition and v-decomposition numbers of cyclotomic q-Schur algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// List Λ and Λ⁺ with standard and semistandard tableau counts.
    Enumerate(ConfigArgs),
    /// Gram matrices of Weyl modules by weight, with valuation profiles.
    Gram(ConfigArgs),
    /// The decomposition matrix.
    Decomp(ConfigArgs),
    /// The v-decomposition matrix.
    Vdecomp(ConfigArgs),
    /// Check the product formulas for a parameter split (needs --p-split).
    VerifyProduct(ConfigArgs),
    /// Compare Specht forms with the (1^n)-weight spaces of Weyl forms.
    SchurCheck(ConfigArgs),
}

impl Cmd {
    fn split(&self) -> (Command, &ConfigArgs) {
        match self {
            Cmd::Enumerate(a) => (Command::Enumerate, a),
            Cmd::Gram(a) => (Command::Gram, a),
            Cmd::Decomp(a) => (Command::Decomp, a),
            Cmd::Vdecomp(a) => (Command::Vdecomp, a),
            Cmd::VerifyProduct(a) => (Command::VerifyProduct, a),
            Cmd::SchurCheck(a) => (Command::SchurCheck, a),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (cmd, args) = cli.command.split();
    match run_config(cmd, args, stdout) {
        Ok(true) => 0,
        Ok(false) => {
            let _ = writeln!(stderr, "verification failed");
            2
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_config(cmd: Command, args: &ConfigArgs, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let cfg = RunConfig::from_args(args)?;
    let outcome = execute(cmd, &cfg)?;
    stdout.write_all(outcome.artifact.render(cfg.output).as_bytes())?;
    Ok(outcome.pass)
}
