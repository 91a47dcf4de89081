use std::process::ExitCode;

use clap::Parser;
use sofic_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            let json = outcome.to_json();
            if let Some(path) = &cli.output.out {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: {}", CliError::io(path, e));
                    return ExitCode::from(2);
                }
            }
            if cli.output.json {
                print!("{json}");
            } else {
                print!("{}", outcome.table);
            }
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
