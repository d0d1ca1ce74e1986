//! The subcommands, as functions from a session to printable output and an
//! exit code.
//!
//! Exit codes: 0 success, 1 verification failure, refusal (budget or depth)
//! or cache conflict, 2 invalid input or malformed file.

use std::fmt::Write as _;
use std::path::Path;

use psi_extrema::descendants::DescendantStore;
use psi_extrema::optimizer::{evaluate_space, DescendantOracle};
use psi_extrema::verify::{range_passed, summarize, verify_identities, OrbitSummary};
use psi_extrema::{Engine, Error, ModuliIndex};

use crate::cache_file::{self, CacheFileError};
use crate::config::{CliConfig, ConfigError};
use crate::report::{emit_identity_report, emit_report};
use crate::store::SharedStore;
use crate::verify_range_parallel;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cache file {0}")]
    Cache(#[from] CacheFileError),
    #[error("config file {0}")]
    Config(#[from] ConfigError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. } | Error::DepthLimit { .. }) => EXIT_FAILURE,
            CliError::Cache(CacheFileError::Conflict { .. }) => EXIT_FAILURE,
            _ => EXIT_INVALID,
        }
    }
}

/// What a successful command prints, and whether it verified.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            ..Output::default()
        }
    }
}

pub struct Session {
    config: CliConfig,
    engine: Engine<SharedStore>,
}

impl Session {
    /// Builds the engine and, if the configured cache file exists, loads it.
    pub fn open(config: CliConfig) -> Result<Self, CliError> {
        let engine = Engine::with_store(SharedStore::new(), config.engine_config());
        if let Some(path) = &config.cache {
            if path.exists() {
                let records = cache_file::read_file(path)?;
                cache_file::merge(engine.store(), records)?;
            }
        }
        Ok(Session { config, engine })
    }

    pub fn config(&self) -> &CliConfig {
        &self.config
    }

    pub fn engine(&self) -> &Engine<SharedStore> {
        &self.engine
    }

    /// Writes the store back to the configured cache file, if any.
    pub fn save(&self) -> Result<(), CliError> {
        if let Some(path) = &self.config.cache {
            cache_file::write_file(path, self.engine.store())?;
        }
        Ok(())
    }

    pub fn compute(&self, g: u32, exponents: &[u32]) -> Result<Output, CliError> {
        let value = self.engine.descendant(g, exponents)?;
        Ok(Output::ok(format!("{value}\n")))
    }

    pub fn table(&self, g: u32, n: usize) -> Result<Output, CliError> {
        let space = ModuliIndex::new(g, n)?.space();
        space.check_budget(self.config.budget)?;
        let mut out = String::new();
        for e in space.enumerate() {
            let value = self.engine.descendant(g, &e)?;
            let _ = writeln!(out, "{e} {value}");
        }
        Ok(Output::ok(out))
    }

    pub fn extrema(&self, g: u32, n: usize) -> Result<Output, CliError> {
        let space = ModuliIndex::new(g, n)?.space();
        let oracle = DescendantOracle::new(&self.engine, g);
        let values = evaluate_space(&oracle, &space, self.config.budget)?;
        let ex = values.extrema();
        let max_orbits = summarize(&ex.argmax);
        let min_orbits = summarize(&ex.argmin);

        let mut out = String::new();
        let _ = writeln!(
            out,
            "max {} at {}",
            ex.max,
            witnesses(&max_orbits, |o| o.key.is_balanced())
        );
        let _ = writeln!(
            out,
            "min {} at {}",
            ex.min,
            witnesses(&min_orbits, |o| o.key.is_concentrated())
        );
        if ex.max == ex.min && values.len() > 1 {
            let _ = writeln!(out, "plateau: all {} values equal {}", values.len(), ex.max);
        } else {
            if max_orbits.len() > 1 {
                let _ = writeln!(
                    out,
                    "plateau: maximum attained on {} orbits",
                    max_orbits.len()
                );
            }
            if min_orbits.len() > 1 {
                let _ = writeln!(
                    out,
                    "plateau: minimum attained on {} orbits",
                    min_orbits.len()
                );
            }
        }
        Ok(Output::ok(out))
    }

    pub fn verify(&self, g_max: u32, n_max: usize) -> Result<Output, CliError> {
        let entries =
            verify_range_parallel(&self.engine, g_max, n_max, &self.config.verify_options());
        let mut output = Output::ok(emit_report(&entries, self.config.format));
        if entries.is_empty() {
            output.stderr =
                format!("no stable (g, n) with g <= {g_max}, n <= {n_max}; nothing to verify\n");
        }
        if !range_passed(&entries) {
            output.code = EXIT_FAILURE;
        }
        Ok(output)
    }

    pub fn identities(&self, g: u32, n: usize) -> Result<Output, CliError> {
        let report = verify_identities(&self.engine, g, n, self.config.samples, self.config.seed)?;
        let mut output = Output::ok(emit_identity_report(&report));
        if !report.all_hold() {
            output.code = EXIT_FAILURE;
        }
        Ok(output)
    }

    pub fn cache_export(&self, path: &Path) -> Result<Output, CliError> {
        cache_file::write_file(path, self.engine.store())?;
        Ok(Output {
            stderr: format!("exported {} records\n", self.engine.store().len()),
            ..Output::default()
        })
    }

    /// Merges a cache file into the session's store. A conflicting record
    /// aborts the import with nothing merged.
    pub fn cache_import(&self, path: &Path) -> Result<Output, CliError> {
        let records = cache_file::read_file(path)?;
        let added = cache_file::merge(self.engine.store(), records)?;
        Ok(Output {
            stderr: format!("imported {added} new records\n"),
            ..Output::default()
        })
    }
}

/// Orbits satisfying `preferred` first, then the rest.
fn witnesses(orbits: &[OrbitSummary], preferred: impl Fn(&OrbitSummary) -> bool) -> String {
    let (first, rest): (Vec<_>, Vec<_>) = orbits.iter().partition(|o| preferred(o));
    first
        .into_iter()
        .chain(rest)
        .map(|o| o.key.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
