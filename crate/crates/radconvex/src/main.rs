use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use radconvex::args::Cli;
use radconvex::output::write_report;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started_at = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true);
    let clock = Instant::now();
    let result = radconvex::run(&cli.command).and_then(|(mut report, format, code)| {
        report.started_at = started_at;
        report.duration_ms = clock.elapsed().as_millis() as u64;
        let mut out = std::io::stdout().lock();
        write_report(&mut out, &report, format)?;
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
