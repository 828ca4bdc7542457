//! `gravcat`: force estimates, trap design, simulation, and feasibility
//! reporting for gravitational cat-state experiments.
//!
//! Every subcommand reads a flat `key = value` config (values unit-tagged,
//! see UNITS.md), writes `report.json` and `report.txt` (plus CSVs where
//! applicable) into the output directory, and prints the view selected by
//! `--format`. Exit codes: 0 success, 1 computational failure, 2 bad
//! configuration.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::RunError;
use config::load_config;
use output::{emit, OutputFormat};

#[derive(Parser)]
#[command(name = "gravcat", version, about = "gravitational cat-state feasibility toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Flat key = value config file (unit-tagged values).
    #[arg(long)]
    config: PathBuf,

    /// Output directory for report.json, report.txt, and CSVs.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// RNG seed for stochastic subcommands.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Override a config key (repeatable), e.g. --set L=2pm.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// What to print on stdout; files are always written.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form force estimate and sensitivity gap.
    Estimate(RunArgs),
    /// Trap constraint chain: frequency, radius bound, mass, zero-point
    /// motion, separation, validation.
    Trap(RunArgs),
    /// Telegraph-process ensemble against the closed-form statistics.
    SimulateClassical(RunArgs),
    /// Qubit-oscillator evolution with observable and spectrum extraction.
    SimulateQuantum(RunArgs),
    /// Probe-survey table, extended-separation projections, appraisal.
    Feasibility(RunArgs),
    /// Constrained grid search over the design levers.
    Optimize(RunArgs),
}

fn dispatch(command: &Command) -> (&RunArgs, Result<output::CommandOutput, RunError>) {
    let run = |args: &RunArgs,
               schema: Vec<config::KeySpec>,
               body: &dyn Fn(&config::LoadedConfig, u64) -> Result<output::CommandOutput, RunError>|
     -> Result<output::CommandOutput, RunError> {
        let loaded = load_config(&args.config, &args.overrides, &schema)?;
        let mut result = body(&loaded, args.seed)?;
        result.warnings.extend(loaded.warnings);
        Ok(result)
    };

    match command {
        Command::Estimate(args) => (
            args,
            run(args, commands::estimate::schema(), &|c, _| {
                commands::estimate::run(c)
            }),
        ),
        Command::Trap(args) => (
            args,
            run(args, commands::trap::schema(), &|c, _| commands::trap::run(c)),
        ),
        Command::SimulateClassical(args) => (
            args,
            run(args, commands::classical::schema(), &|c, seed| {
                commands::classical::run(c, seed)
            }),
        ),
        Command::SimulateQuantum(args) => (
            args,
            run(args, commands::quantum::schema(), &|c, _| {
                commands::quantum::run(c)
            }),
        ),
        Command::Feasibility(args) => (
            args,
            run(args, commands::feasibility::schema(), &|c, _| {
                commands::feasibility::run(c)
            }),
        ),
        Command::Optimize(args) => (
            args,
            run(args, commands::optimize::schema(), &|c, _| {
                commands::optimize::run(c)
            }),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, result) = dispatch(&cli.command);
    match result {
        Ok(output) => {
            if let Err(e) = emit(&output, &args.out, args.format) {
                eprintln!("error: cannot write artifacts to {}: {e}", args.out.display());
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(RunError::Config(e)) => {
            eprintln!("config error: {e}");
            ExitCode::from(2)
        }
        Err(RunError::Compute(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
