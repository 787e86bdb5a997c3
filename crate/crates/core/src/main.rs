use std::process::ExitCode;

use clap::Parser;
use quasimix::cli::{run_and_write, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.into_config().and_then(|cfg| run_and_write(&cfg));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
