// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use ddhgen_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
