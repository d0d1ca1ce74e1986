//! Run configuration: defaults, an optional TOML file, then command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use psi_extrema::descendants::DEFAULT_DEPTH_LIMIT;
use psi_extrema::verify::{VerifyOptions, DEFAULT_BUDGET, DEFAULT_IDENTITY_SAMPLES, DEFAULT_SEED};
use psi_extrema::EngineConfig;
use serde::Deserialize;

use crate::report::ReportFormat;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: toml::de::Error,
    },
    #[error("{field} must be at least 1")]
    Zero { field: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    /// Largest space evaluated exhaustively.
    pub budget: u128,
    /// Largest dimension the engine will recurse on.
    pub depth: u32,
    pub cache: Option<PathBuf>,
    pub format: ReportFormat,
    pub seed: u64,
    pub samples: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            depth: DEFAULT_DEPTH_LIMIT,
            cache: None,
            format: ReportFormat::Table,
            seed: DEFAULT_SEED,
            samples: DEFAULT_IDENTITY_SAMPLES,
        }
    }
}

/// Every field optional; present fields replace the defaults.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub budget: Option<u64>,
    pub depth: Option<u32>,
    pub cache: Option<PathBuf>,
    pub format: Option<ReportFormat>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

impl ConfigOverrides {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Parse {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn read(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text, path)
    }

    /// Fields set in `later` win.
    pub fn then(self, later: ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            budget: later.budget.or(self.budget),
            depth: later.depth.or(self.depth),
            cache: later.cache.or(self.cache),
            format: later.format.or(self.format),
            seed: later.seed.or(self.seed),
            samples: later.samples.or(self.samples),
        }
    }
}

impl CliConfig {
    pub fn resolve(overrides: ConfigOverrides) -> Result<Self, ConfigError> {
        let defaults = CliConfig::default();
        let config = CliConfig {
            budget: overrides.budget.map_or(defaults.budget, u128::from),
            depth: overrides.depth.unwrap_or(defaults.depth),
            cache: overrides.cache,
            format: overrides.format.unwrap_or(defaults.format),
            seed: overrides.seed.unwrap_or(defaults.seed),
            samples: overrides.samples.unwrap_or(defaults.samples),
        };
        if config.budget == 0 {
            return Err(ConfigError::Zero { field: "budget" });
        }
        if config.depth == 0 {
            return Err(ConfigError::Zero { field: "depth" });
        }
        Ok(config)
    }

    pub fn engine_config(&self) -> EngineConfig {
        EngineConfig {
            depth_limit: self.depth,
            ..EngineConfig::default()
        }
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            budget: self.budget,
            identity_samples: self.samples,
            seed: self.seed,
        }
    }
}
