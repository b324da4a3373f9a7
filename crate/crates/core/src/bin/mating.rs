use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mating_core::workbench::{run, Command};

fn main() -> ExitCode {
    let cmd = Command::parse();
    match run(&cmd) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
