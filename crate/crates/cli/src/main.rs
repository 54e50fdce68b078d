use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use sdlab::args::Cli;
use sdlab::commands::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli, &mut io::stderr()) {
        Ok(outcome) => {
            let _ = io::stdout().write_all(outcome.stdout.as_bytes());
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("sdlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
