mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::{run, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}\n\nRun 'mgk --help' for usage."),
                CliError::Domain(m) | CliError::Io(m) => eprintln!("error: {m}"),
                CliError::NotConverged(m) => eprintln!("error: NOT_CONVERGED: {m}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
