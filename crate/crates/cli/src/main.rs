use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use z4trace_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((out, passed)) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            if passed {
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
