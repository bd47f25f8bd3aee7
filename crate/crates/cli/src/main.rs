mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use run::{CliError, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run::execute(cli.command) {
        Ok(doc) => {
            emit(&doc);
            ExitCode::SUCCESS
        }
        Err(CliError::Report { doc, code }) => {
            emit(&doc);
            ExitCode::from(code)
        }
        Err(e) => {
            emit(&e.to_json());
            if let CliError::Usage(msg) = &e {
                eprintln!("error: {msg}\n\nRun `orbitol --help` for usage.");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

/// Prints one JSON document; a closed stdout is not an error worth a panic.
fn emit(doc: &serde_json::Value) {
    let mut out = std::io::stdout().lock();
    if serde_json::to_writer_pretty(&mut out, doc).is_ok() {
        let _ = writeln!(out);
    }
}
