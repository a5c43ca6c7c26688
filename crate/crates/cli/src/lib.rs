//! The `fibcat` command line.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 a verification found a
//! nonzero residual, 3 the constraint system has no real solution.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::CliError;
use crate::output::Report;

fn dispatch(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Catalan { upto } => commands::catalan(*upto),
        Command::SolveSeries(a) => commands::solve_series(a),
        Command::Radius(a) => commands::radius(a),
        Command::Prop41(a) => commands::prop41(a),
        Command::SurfaceReduce(a) => commands::surface_reduce(a),
        Command::ChowEval(a) => commands::chow_eval(a),
        Command::FmTransform(a) => commands::fm_transform(a),
        Command::CentralCharge(a) => commands::central_charge(a),
        Command::SolveConstraints(a) => commands::solve_constraints(a),
        Command::VerifyCceq(a) => commands::verify_cceq(a),
        Command::Sweep(a) => commands::sweep(a),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Catalan { .. } => "catalan",
        Command::SolveSeries(_) => "solve-series",
        Command::Radius(_) => "radius",
        Command::Prop41(_) => "prop41",
        Command::SurfaceReduce(_) => "surface-reduce",
        Command::ChowEval(_) => "chow-eval",
        Command::FmTransform(_) => "fm-transform",
        Command::CentralCharge(_) => "central-charge",
        Command::SolveConstraints(_) => "solve-constraints",
        Command::VerifyCceq(_) => "verify-cceq",
        Command::Sweep(_) => "sweep",
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let report = dispatch(&cli.command)?;
    let rendered = report.render(cli.format, command_name(&cli.command))?;
    match &cli.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        })?,
        None => stdout
            .write_all(rendered.as_bytes())
            .map_err(|e| CliError::Io {
                path: "<stdout>".into(),
                source: e,
            })?,
    }
    Ok(if report.verified { 0 } else { 2 })
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if informational { 0 } else { 1 };
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
