//! `au`: compute AU, validate and transform BPA documents, and run the axiom
//! suite from the command line.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use au_core::axioms::suite::SuiteSelection;
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{CliError, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "au",
    version,
    about = "Aggregate uncertainty of Dempster-Shafer belief functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print AU of a BPA and the distribution attaining it.
    Compute {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check that a BPA document or belief table is well formed.
    Validate { file: PathBuf },
    /// Coarsen a BPA onto the blocks of a partition.
    Project {
        file: PathBuf,
        /// Blocks separated by `|`, labels within a block by `,`.
        #[arg(long)]
        blocks: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Move the fraction 1 - alpha of a focal mass onto a strict superset.
    Transfer {
        file: PathBuf,
        #[arg(long)]
        from_set: String,
        #[arg(long)]
        to_set: String,
        #[arg(long)]
        alpha: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Non-interactive product of two BPAs.
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the axiom suite against AU.
    Check {
        /// `all` or one requirement id (R1..R8, T1, T2, T3, C4, T7).
        #[arg(long, default_value = "all")]
        suite: SuiteSelection,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=24))]
        frame_size: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Required when AU_CI=1; drawn at random otherwise.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute AU by direct numerical search.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Grid)]
        mode: Mode,
        /// Seed of the ascent starting points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Grid,
    Ascent,
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Compute { file, json } => commands::compute(&file, json),
        Command::Validate { file } => commands::validate(&file),
        Command::Project {
            file,
            blocks,
            output,
        } => commands::project(&file, &blocks, output.as_deref()),
        Command::Transfer {
            file,
            from_set,
            to_set,
            alpha,
            output,
        } => commands::transfer(&file, &from_set, &to_set, alpha, output.as_deref()),
        Command::Product {
            first,
            second,
            output,
        } => commands::product(&first, &second, output.as_deref()),
        Command::Check {
            suite,
            frame_size,
            samples,
            seed,
            json,
        } => commands::check(suite, frame_size as usize, samples, seed, json),
        Command::Oracle { file, mode, seed } => commands::oracle(&file, mode == Mode::Ascent, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("au: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
