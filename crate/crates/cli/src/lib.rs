//! Command-line front end for `schroq-core`: subcommands, reports and the acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use commands::{execute, Command};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "schroq",
    version,
    about = "Exact checks for the quantum Schrodinger algebra"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub report: Format,
    /// Include the wall time in JSON reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Exit status and rendered output of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line: 0 when every check passes, 1 when one fails, 2 on usage or input errors.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(mut report) => {
            report.wall_time = Some(start.elapsed());
            let stdout = match cli.report {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(cli.timing) + "\n",
            };
            Outcome {
                code: if report.passed() { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.0),
        },
    }
}
