//! `infodist`: batch front end for the toy-machine information distance
//! laboratory.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 a mathematical invariant
//! was violated.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::OutputFormat;

pub const DEFAULT_SEED: u64 = 20_240_101;

#[derive(Parser)]
#[command(
    name = "infodist",
    version,
    about = "Information distance of multisets at desk scale"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: OutputFormat,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Machine configuration (JSON: step_budget, max_program_length, input_universe).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Toy machine: halting sets, f-table, K, ID and the theorem check.
    #[command(subcommand)]
    Machine(commands::machine::MachineCmd),
    /// Greedy labeling of the multiset/element graph.
    #[command(subcommand)]
    Label(commands::label::LabelCmd),
    /// Label encoders and decoders.
    #[command(subcommand)]
    Codec(commands::codec::CodecCmd),
    /// Compression distances.
    #[command(subcommand)]
    Ncd(commands::ncd::NcdCmd),
    /// Overlap constructions.
    #[command(subcommand)]
    Overlap(commands::overlap::OverlapCmd),
}

pub struct Globals {
    pub seed: u64,
    pub config: Option<PathBuf>,
    pub output: OutputFormat,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let globals = Globals {
        seed: cli.seed,
        config: cli.config,
        output: cli.output,
    };
    let result = match cli.command {
        Command::Machine(cmd) => commands::machine::run(cmd, &globals),
        Command::Label(cmd) => commands::label::run(cmd, &globals),
        Command::Codec(cmd) => commands::codec::run(cmd, &globals),
        Command::Ncd(cmd) => commands::ncd::run(cmd, &globals),
        Command::Overlap(cmd) => commands::overlap::run(cmd, &globals),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.render(globals.output));
            if outcome.violated {
                eprintln!("invariant violated");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
