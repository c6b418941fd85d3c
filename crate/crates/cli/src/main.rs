//! `g2calib`: JSON command line front end.
//!
//! Every command prints a [`report::RunReport`] to standard output. Exit codes:
//! 0 success, 2 parse error, 3 invariant violation or failed check.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use commands::{CliError, FixtureKind};
use g2calib::par::init_thread_pool;
use g2calib::symbol::BoundaryProjector;

#[derive(Parser)]
#[command(name = "g2calib", version, about = "Pointwise G2 calibration toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for all randomness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random trials.
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: usize,
    /// Grid size: search resolution for classify-plane, covector count for ebc-check.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Input JSON file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Replace φ₀ by a corrupted table.
    #[arg(long, global = true, hide = true)]
    corrupt_phi: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded identity suite for the pointwise algebra.
    VerifyIdentities,
    /// Classify a 3- or 4-plane given as {"dim", "vectors"}.
    ClassifyPlane,
    /// Split the normal space along a boundary configuration.
    BoundarySplit,
    /// Index from boundary components [{"genus", "c1"}, …].
    Index,
    /// Check the local elliptic boundary condition on a covector grid.
    EbcCheck {
        #[arg(long, value_enum, default_value = "mu-x")]
        projector: Projector,
    },
    /// First Chern number of a sampled line bundle.
    Chern,
    /// Maslov class of a line bundle over a sphere, both ways.
    Maslov,
    /// Fixed locus of an affine map of T⁷.
    FixedLoci,
    /// Orbit census of fixed loci under a finite group.
    Census,
    /// Reproduce every quoted number of the worked examples.
    PaperExamples,
    /// Print a sample line bundle as JSON.
    Fixture {
        #[arg(value_enum)]
        kind: FixtureKind,
        /// Icosphere subdivision level.
        #[arg(long, default_value_t = 2)]
        level: usize,
        /// Degree for the `degree` bundle.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        degree: i64,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Projector {
    MuX,
    NuPlus,
}

fn run(cli: &Cli) -> Result<Option<report::RunReport>, CliError> {
    let g = &cli.global;
    let input = g.input.as_ref();
    let report = match &cli.command {
        Command::VerifyIdentities => commands::verify_identities(g.seed, g.trials, g.corrupt_phi)?,
        Command::ClassifyPlane => {
            commands::classify_plane(g.seed, input, g.tol, g.grid.unwrap_or(g2calib::calibration::DEFAULT_GRID))?
        }
        Command::BoundarySplit => commands::boundary_split(g.seed, input)?,
        Command::Index => commands::index(g.seed, input)?,
        Command::EbcCheck { projector } => {
            let p = match projector {
                Projector::MuX => BoundaryProjector::MuX,
                Projector::NuPlus => BoundaryProjector::NuPlus,
            };
            commands::ebc(g.seed, g.grid.unwrap_or(g2calib::symbol::DEFAULT_GRID), p)?
        }
        Command::Chern => commands::chern(g.seed, input)?,
        Command::Maslov => commands::maslov(g.seed, input)?,
        Command::FixedLoci => commands::fixed_loci(g.seed, input)?,
        Command::Census => commands::census(g.seed, input)?,
        Command::PaperExamples => commands::paper(g.seed)?,
        Command::Fixture { kind, level, degree } => {
            print_json(&commands::fixture(*kind, *level, *degree), g.pretty);
            return Ok(None);
        }
    };
    Ok(Some(report))
}

fn print_json(x: &impl serde::Serialize, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(x) } else { serde_json::to_string(x) };
    println!("{}", text.expect("serializable output"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            print_json(&report, cli.global.pretty);
            if report.pass() {
                ExitCode::SUCCESS
            } else {
                for c in report.checks.iter().filter(|c| !c.pass && !c.informational) {
                    eprintln!("check failed: {}", c.name);
                }
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
