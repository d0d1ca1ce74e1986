//! Exact ψ-class descendant integrals on moduli spaces of stable curves, and
//! the extremal theorem for symmetric, log-concave, positive functions on weak
//! compositions: the maximum sits on a balanced vector, the minimum on a
//! concentrated one.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command-line front end live in `psi-extrema-cli`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod compositions;
pub mod descendants;
pub mod error;
pub mod optimizer;
pub mod verify;

pub use compositions::{CompositionSpace, ExponentVector};
pub use descendants::{DescendantKey, Engine, EngineConfig, ModuliIndex, Rational};
pub use error::{Error, Result};
pub use optimizer::Oracle;
