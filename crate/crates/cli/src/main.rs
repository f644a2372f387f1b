//! Command-line front end for the concept-mining pipeline.
//!
//! `run` analyzes a corpus directory and writes per-stage JSON artifacts,
//! `classify` scores a learner document against a finished run, and
//! `report` prints CSV summaries of the results.

mod classify;
mod config;
mod manifest;
mod report;
mod run;

use clap::{Parser, Subcommand};

use crate::classify::ClassifyArgs;
use crate::config::{ConfigFlags, PipelineConfig};
use crate::report::ReportArgs;

#[derive(Debug, Parser)]
#[command(
    name = "conceptmine",
    version,
    about = "Concept mining over free-text learning material"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze a corpus directory and write stage artifacts
    Run {
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Score a learner document against a run's concept map
    Classify(ClassifyArgs),
    /// Print a CSV summary of run or classification outputs
    Report(ReportArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { flags } => {
            PipelineConfig::resolve(flags).and_then(|config| run::run(&config))
        }
        Command::Classify(args) => classify::classify_command(args),
        Command::Report(args) => report::report(args),
    };
    if let Err(error) = result {
        eprintln!("error: {error:#}");
        std::process::exit(1);
    }
}
