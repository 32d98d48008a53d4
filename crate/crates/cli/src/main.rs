//! `daehee`: generate sequence tables, run the identity checks, and compare
//! degenerate families with their classical limits.
//!
//! Exit codes: 0 success, 1 an identity or limit comparison failed, 2 usage
//! or i/o error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::{CliError, Outcome};

const EXIT_IDENTITY_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::IdentityFailure) => ExitCode::from(EXIT_IDENTITY_FAILURE),
        Err(e @ (CliError::Usage(_) | CliError::Io(_))) => {
            eprintln!("daehee: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
