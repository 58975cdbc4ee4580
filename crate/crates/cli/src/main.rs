mod common;
mod generate;
mod metrics;
mod murray;
mod sweep;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use common::CliError;

#[derive(Parser)]
#[command(name = "vasqforge", version, about = "Synthetic vessel masks grown by space colonization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate masks, skeletons and a manifest.
    Generate(generate::Args),
    /// Sweep one growth parameter and summarise mask statistics as CSV.
    Sweep(sweep::Args),
    /// Murray's-law compliance of masks or of a forest JSON file.
    ValidateMurray(murray::Args),
    /// DSC and clDice between prediction and ground-truth directories.
    Metrics(metrics::Args),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let pool = common::thread_pool()?;
    pool.install(|| match cli.command {
        Command::Generate(a) => generate::run(a),
        Command::Sweep(a) => sweep::run(a),
        Command::ValidateMurray(a) => murray::run(a),
        Command::Metrics(a) => metrics::run(a),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
