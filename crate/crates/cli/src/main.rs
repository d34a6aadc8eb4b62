use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use commands::CliError;

/// Zeroth Poisson homology of quasihomogeneous surface singularities and
/// their symmetric powers.
#[derive(Debug, Parser)]
#[command(name = "hp0", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: RunConfig,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Browse the surface catalog.
    Surface {
        #[command(subcommand)]
        action: SurfaceAction,
    },
    /// Graded dimensions of the Jacobi ring, Milnor number and exponents.
    Jacobi,
    /// Brute-force HP0 of the n-th symmetric power against the product formula.
    Hp0,
    /// Closed-form generating functions.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
    },
    /// Run every cross-check.
    Verify {
        /// Flip the sign of {z,x} before the bracket checks.
        #[arg(long, hide = true)]
        mutate_bracket: bool,
        /// Random inputs per bracket axiom and surface.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
enum SurfaceAction {
    /// List the catalog with weights, degree, bracket degree and Q.
    List,
    /// Show one catalog entry and its validation report.
    Show { tag: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Generator,
    Product,
    Chi,
    Vq,
    Wreath,
    Slice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Catalog tag: A, D, E6, E7, E8, tE6, tE7, tE8.
    #[arg(long, global = true)]
    pub surface: Option<String>,
    /// Parameter m of the A and D families.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(2..))]
    pub m: Option<u32>,
    /// Elliptic parameter as an exact rational "p/q" (default 1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// JSON file describing a custom surface.
    #[arg(long, global = true, conflicts_with = "surface")]
    pub custom: Option<PathBuf>,
    /// Symmetric power.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Largest weight for brute-force tables.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(0..))]
    pub max_weight: Option<i64>,
    /// Largest t-exponent of series.
    #[arg(long, global = true, default_value_t = 40, value_parser = clap::value_parser!(i64).range(0..))]
    pub max_t: i64,
    /// Largest s-exponent of series.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_s: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Maximum nonzeros in one weight slice.
    #[arg(long, global = true, default_value_t = hp0_core::hp0::DEFAULT_CAP, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub cap: usize,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub workers: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.config.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: cannot start {k} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Surface {
            action: SurfaceAction::List,
        } => commands::surface_list(&cli.config),
        Command::Surface {
            action: SurfaceAction::Show { tag },
        } => commands::surface_show(&cli.config, tag),
        Command::Jacobi => commands::jacobi(&cli.config),
        Command::Hp0 => commands::hp0(&cli.config),
        Command::Series { kind } => commands::series(&cli.config, *kind),
        Command::Verify {
            mutate_bracket,
            samples,
        } => commands::verify(&cli.config, *mutate_bracket, *samples),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(e @ CliError::Rejected(_)) => {
            if let CliError::Rejected(text) = &e {
                print!("{text}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
