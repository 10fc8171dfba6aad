use std::process::ExitCode;

use clap::Parser;
use qdvol::{execute, Cli};

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(out) => {
            for n in &out.notes {
                eprintln!("qdvol: {n}");
            }
            print!("{}", out.stdout);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("qdvol: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
