use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use psi_extrema_cli::commands::{CliError, Output, Session, EXIT_INVALID};
use psi_extrema_cli::config::{CliConfig, ConfigOverrides};
use psi_extrema_cli::ReportFormat;

/// Exact ψ-class descendant integrals and the balanced/concentrated extremal
/// theorem on weak compositions.
#[derive(Parser, Debug)]
#[command(name = "psi-extrema", version)]
struct Cli {
    /// Largest space size evaluated exhaustively.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    /// Largest dimension 3g-3+n the engine recurses on.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    depth: Option<u32>,

    /// Cache file, loaded at start if present and rewritten on exit.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Report format: table or csv.
    #[arg(long, global = true)]
    format: Option<ReportFormat>,

    /// Seed for sampled identity checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// TOML file with any of budget, depth, cache, format, seed, samples.
    /// Flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Print cache hits and misses to standard error.
    #[arg(long, global = true)]
    stats: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one descendant integral.
    Compute {
        #[arg(long)]
        g: u32,
        #[arg(required = true, num_args = 1..)]
        exponents: Vec<u32>,
    },
    /// Every value on E(n, 3g-3+n) in enumeration order.
    Table {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
    /// Maximum and minimum with witnesses.
    Extrema {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
    /// Verify the extremal theorem on every stable (g, n) in range.
    Verify {
        #[arg(long)]
        gmax: u32,
        #[arg(long)]
        nmax: usize,
        /// Vectors per space for the identity checks.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Check the string, dilaton and one-point identities on one (g, n).
    Identities {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Write or merge cache files.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Export { path: PathBuf },
    Import { path: PathBuf },
}

impl Cli {
    fn overrides(&self) -> ConfigOverrides {
        let samples = match self.command {
            Command::Verify { samples, .. } | Command::Identities { samples, .. } => samples,
            _ => None,
        };
        ConfigOverrides {
            budget: self.budget,
            depth: self.depth,
            cache: self.cache.clone(),
            format: self.format,
            seed: self.seed,
            samples,
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let file = match &cli.config {
        Some(path) => ConfigOverrides::read(path)?,
        None => ConfigOverrides::default(),
    };
    let config = CliConfig::resolve(file.then(cli.overrides()))?;
    let session = Session::open(config)?;
    let result = match &cli.command {
        Command::Compute { g, exponents } => session.compute(*g, exponents),
        Command::Table { g, n } => session.table(*g, *n),
        Command::Extrema { g, n } => session.extrema(*g, *n),
        Command::Verify { gmax, nmax, .. } => session.verify(*gmax, *nmax),
        Command::Identities { g, n, .. } => session.identities(*g, *n),
        Command::Cache { action } => match action {
            CacheAction::Export { path } => session.cache_export(path),
            CacheAction::Import { path } => session.cache_import(path),
        },
    };
    if cli.stats {
        let stats = session.engine().stats();
        eprintln!("cache: {} hits, {} misses", stats.hits, stats.misses);
    }
    session.save()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{}", output.stdout);
            eprint!("{}", output.stderr);
            ExitCode::from(output.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = err.exit_code();
            debug_assert!(code == 1 || code == EXIT_INVALID);
            ExitCode::from(code)
        }
    }
}
