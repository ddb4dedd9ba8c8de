use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    rck::cli::run(rck::cli::Cli::parse())
}
