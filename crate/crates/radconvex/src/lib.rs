//! Command-line front end for `radconvex-core`.
//!
//! `classify` estimates the radical order of a function, `verify` checks one
//! inequality on explicit or seeded random instances, and `bound` prints the
//! terms of the pointwise bounds. Reports render as a table, JSON or CSV.
//!
//! Exit codes: 0 all checks pass, 1 some inequality is violated, 2 usage,
//! parse or domain error, 3 numeric failure.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod report;
pub mod sampling;

use args::{Command, Format};
use error::{exit, CliError};
use report::RunReport;

/// Runs one command; returns its report, the requested format and the exit code.
pub fn run(command: &Command) -> Result<(RunReport, Format, u8), CliError> {
    let (report, format) = match command {
        Command::Classify(a) => (commands::classify(a)?, a.format),
        Command::Verify(a) => (commands::verify(a)?, a.format),
        Command::Bound(a) => (commands::bound(a)?, a.format),
    };
    let code = match command {
        Command::Bound(_) => exit::PASS,
        _ if report.overall_pass => exit::PASS,
        _ => exit::VIOLATION,
    };
    Ok((report, format, code))
}
