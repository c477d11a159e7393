use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use devissage_cli::{check, run_file, CliError, Flags, RunReport};

fn write_report(flags: &Flags, report: &RunReport) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("reports always serialize");
    text.push('\n');
    match &flags.report {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let flags = match Flags::try_parse() {
        Ok(f) => f,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = run_file(&flags).and_then(|report| {
        write_report(&flags, &report)?;
        check(&report)
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("devissage: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
