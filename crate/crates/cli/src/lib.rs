//! File formats, reports, configuration and command implementations behind
//! the `psi-extrema` binary.

pub mod cache_file;
pub mod commands;
pub mod config;
pub mod report;
pub mod store;

use psi_extrema::descendants::DescendantStore;
use psi_extrema::verify::{stable_pairs, verify_pair, RangeEntry, VerifyOptions};
use psi_extrema::Engine;
use rayon::prelude::*;

pub use config::CliConfig;
pub use report::{emit_report, ReportFormat};
pub use store::SharedStore;

/// Verifies every stable pair in range on the rayon pool, sharing one cache.
/// Entries come back ordered by `(g, n)`.
pub fn verify_range_parallel<S: DescendantStore + Sync>(
    engine: &Engine<S>,
    g_max: u32,
    n_max: usize,
    options: &VerifyOptions,
) -> Vec<RangeEntry> {
    stable_pairs(g_max, n_max)
        .into_par_iter()
        .map(|idx| verify_pair(engine, idx, options))
        .collect()
}
