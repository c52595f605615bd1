mod args;
mod commands;
mod manifest;
mod model;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use model::InputError;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simulate(a) => commands::cmd_simulate(a).map(|_| true),
        Command::Tables(a) => commands::cmd_tables(a).map(|_| true),
        Command::Validate(a) => commands::cmd_validate(a),
        Command::Bench(a) => commands::cmd_bench(a).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("chebsim: validation failed");
            ExitCode::from(1)
        }
        Err(e) if e.is::<InputError>() => {
            eprintln!("chebsim: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("chebsim: {e:#}");
            ExitCode::from(1)
        }
    }
}
