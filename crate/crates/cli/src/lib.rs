//! The `predict` command-line front end: argument handling, input files,
//! and report rendering over `predict-core`.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult, EXIT_USAGE};

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                0
            };
        }
    };
    match execute(&cli) {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(_) => 1,
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code
        }
    }
}

fn execute(cli: &Cli) -> CliResult<String> {
    let outcome = match &cli.command {
        Command::Analyze(a) => commands::analyze(a)?,
        Command::Calibrate(a) => commands::calibrate(a)?,
        Command::Convert(a) => commands::convert(a)?,
        Command::Adversary(a) => commands::adversary(a)?,
    };
    let mut report = outcome.report;
    match (&cli.out, outcome.object) {
        (Some(path), Some(lines)) => {
            let body: String = lines.iter().map(|l| format!("{l}\n")).collect();
            write_file(path, &body)?;
            report.field("output", path.display().to_string());
            Ok(report.render(cli.json))
        }
        (None, object) => {
            report.output = object;
            Ok(report.render(cli.json))
        }
        (Some(path), None) => {
            write_file(path, &report.render(cli.json))?;
            Ok(String::new())
        }
    }
}

fn write_file(path: &std::path::Path, body: &str) -> CliResult<()> {
    fs::write(path, body)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}
