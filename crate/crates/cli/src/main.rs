mod commands;
mod config;
mod output;
mod pipeline;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command, Settings};
use pipeline::Pipeline;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or configuration.
    Usage(String),
    /// Unreadable or invalid input data.
    Input(String),
    /// Output or cache directory trouble.
    Environment(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Environment(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Environment(m) => m,
        }
    }
}

enum Job {
    Build,
    Centrality,
    Analyze(config::Analysis),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (flags, job) = match cli.command {
        Command::Build(f) => (f, Job::Build),
        Command::Centrality(f) => (f, Job::Centrality),
        Command::Analyze { name, flags } => (flags, Job::Analyze(name)),
    };
    let pipeline = Pipeline::load(Settings::resolve(flags)?)?;
    let result = match job {
        Job::Build => commands::build(&pipeline),
        Job::Centrality => commands::centrality(&pipeline),
        Job::Analyze(a) => commands::analyze(&pipeline, a),
    };
    let (hits, lookups) = pipeline.cache_stats();
    if lookups > 0 {
        eprintln!("cache hits: {hits}/{lookups}");
    }
    result
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
