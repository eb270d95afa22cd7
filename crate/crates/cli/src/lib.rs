//! Command-line front end for the `aoi-core` library.
//!
//! `paoi` solves, optimizes, simulates and sweeps the network model and writes
//! CSV or JSON tables. Every subcommand accepts the same parameter flags; a
//! JSON config file may supply any of them and flags on the command line win.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 numerical failure,
//! 4 I/O error.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod record;
pub mod resolve;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Cli;
pub use error::CliError;
pub use resolve::{resolve, resolve_with, Action, Invocation};

use record::Table;

/// Parses argv and resolves it against the config file, without running.
pub fn parse_invocation<I, T>(argv: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::usage(e.to_string()))?;
    resolve(&cli)
}

/// Runs a resolved invocation and returns its output table.
pub fn execute(inv: &Invocation) -> Result<Table, CliError> {
    let s = &inv.settings;
    let record = match &inv.action {
        Action::Solve => commands::solve(&inv.params()?)?,
        Action::Aoi => commands::aoi(&inv.params()?)?,
        Action::OptimizeQ => commands::optimization(&aoi_core::aoi::optimize_q(&inv.params()?)?),
        Action::OptimizeXi => commands::optimization(&aoi_core::aoi::optimize_xi(&inv.params()?)?),
        Action::OptimizeJoint => {
            commands::optimization(&aoi_core::aoi::optimize_joint(&inv.params()?)?)
        }
        Action::Simulate => commands::simulate(&s.sim.config(inv.params()?)?)?,
        Action::Sweep(spec) => return sweep::run(spec, inv.params()?, &s.sim),
        Action::Reproduce {
            figure,
            analytic_only,
        } => return figures::reproduce(*figure, &s.params, &s.sim, *analytic_only),
    };
    Ok(Table::single(record))
}

fn emit(inv: &Invocation, table: &Table, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = table.render(inv.settings.format);
    match &inv.settings.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            }),
    }
}

/// Full program: returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => error::EXIT_USAGE,
            };
        }
    };
    let result = resolve(&cli).and_then(|inv| {
        let table = execute(&inv)?;
        emit(&inv, &table, stdout)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "paoi: {e}");
            e.exit_code()
        }
    }
}
