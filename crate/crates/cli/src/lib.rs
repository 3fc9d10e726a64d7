//! Library side of the `isocal` command-line tool.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use config::{parse_tolerance, FileConfig, Overrides, RunConfig, SpaceArg};
pub use error::{CliError, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "isocal", version, about = "Numerical checks of calibrated isoperimetric inequalities and null Lagrangians")]
pub struct Cli {
    /// JSON file with default settings.
    #[arg(long, global = true, env = "ISOCAL_CONFIG", value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Override a tolerance, e.g. `identity=1e-4`. Repeatable.
    #[arg(long, global = true, value_name = "NAME=VALUE", value_parser = parse_tolerance)]
    pub tolerance: Vec<(String, f64)>,

    /// Report file; for `plotdata`, the output directory.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Leave the wall time out of the report so reruns are byte-identical.
    #[arg(long, global = true)]
    pub stable: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Isoperimetric report for a curve file.
    Verify {
        /// Space of the curve; defaults to the file's `space` field.
        #[arg(long, value_enum)]
        space: Option<SpaceArg>,
        /// Sub-edges per edge (default: at least 512 boundary nodes).
        #[arg(long)]
        refinement: Option<usize>,
        /// Skip the quadratic self-intersection test.
        #[arg(long)]
        skip_simple_check: bool,
        file: PathBuf,
    },
    /// Sampled checks of the biform's calibration conditions.
    Calibration {
        #[arg(long, value_enum)]
        space: Option<SpaceArg>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Null-Lagrangian checks on a built-in problem.
    Mayer {
        /// One of free, oscillator, cosh.
        #[arg(long)]
        problem: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// CSV samples of the Mayer field, its circles and a foliation.
    Plotdata {
        #[arg(long)]
        problem: Option<String>,
        /// Points per side of the sampling grid.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        refinement: Option<usize>,
        /// Optional curve whose boundary nodes are written too.
        file: Option<PathBuf>,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli, echo) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("isocal: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command; `Ok(passed)` once the report is written.
pub fn execute(cli: Cli, echo: Vec<String>) -> Result<bool, CliError> {
    let start = Instant::now();
    let file_config = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let mut flags = Overrides {
        tolerances: cli.tolerance,
        out: cli.out,
        ..Default::default()
    };
    let defaults = match &cli.command {
        Command::Verify { space, refinement, .. } => {
            flags.space = *space;
            flags.refinement = *refinement;
            commands::verify::TOLERANCES
        }
        Command::Calibration { space, samples, seed } => {
            flags.space = *space;
            flags.samples = *samples;
            flags.seed = *seed;
            commands::calibration::TOLERANCES
        }
        Command::Mayer { problem, samples, seed } => {
            flags.problem = problem.clone();
            flags.samples = *samples;
            flags.seed = *seed;
            commands::mayer::TOLERANCES
        }
        Command::Plotdata { problem, grid, refinement, .. } => {
            flags.problem = problem.clone();
            flags.grid = *grid;
            flags.refinement = *refinement;
            commands::plotdata::TOLERANCES
        }
    };
    let config = RunConfig::resolve(file_config, flags, defaults)?;
    let mut report = Report::new(echo, config.tolerances.clone());
    let report_path = match &cli.command {
        Command::Verify { file, skip_simple_check, .. } => {
            commands::verify::run(&config, file, !skip_simple_check, &mut report)?;
            config.out.clone()
        }
        Command::Calibration { .. } => {
            commands::calibration::run(&config, &mut report)?;
            config.out.clone()
        }
        Command::Mayer { .. } => {
            commands::mayer::run(&config, &mut report)?;
            config.out.clone()
        }
        Command::Plotdata { file, .. } => {
            commands::plotdata::run(&config, file.as_deref(), &mut report)?;
            None
        }
    };
    report.finish();
    if !cli.stable {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    report.emit(report_path.as_deref())?;
    Ok(report.passed)
}
