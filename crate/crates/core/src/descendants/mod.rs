//! Exact descendant integrals `<τ_{e_1} ... τ_{e_n}>_g` over the moduli space
//! of stable genus-`g` curves with `n` marked points.
//!
//! Values come from, in order of preference: the degree check, the closed
//! genus-zero multinomial, the two base cases, the string and dilaton
//! equations, and finally the Witten–Kontsevich recursion in its
//! Dijkgraaf–Verlinde–Verlinde form. Every value is cached on the sorted
//! multiset of exponents.

mod engine;
mod formulas;
mod store;

use alloc::vec::Vec;
use core::fmt;

use crate::compositions::{CompositionSpace, ExponentVector};
use crate::error::{Error, Result};

pub use engine::{Engine, EngineConfig, EngineStats, DEFAULT_DEPTH_LIMIT};
pub(crate) use formulas::factorial;
pub use formulas::{dilaton_apply, genus0_closed, one_point_value, string_apply};
pub use store::{DescendantStore, LocalStore};

/// Exact rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `2g - 2 + n > 0`.
pub fn is_stable(g: u32, n: usize) -> bool {
    2 * u64::from(g) + n as u64 > 2
}

/// A stable pair `(g, n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ModuliIndex {
    g: u32,
    n: usize,
}

impl ModuliIndex {
    pub fn new(g: u32, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        if !is_stable(g, n) {
            return Err(Error::Unstable { g, n });
        }
        Ok(Self { g, n })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `3g - 3 + n`.
    pub fn dimension(&self) -> u32 {
        3 * self.g + self.n as u32 - 3
    }

    /// `E(n, 3g - 3 + n)`.
    pub fn space(&self) -> CompositionSpace {
        CompositionSpace::new(self.n, self.dimension()).expect("n >= 1")
    }
}

impl fmt::Display for ModuliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, n={})", self.g, self.n)
    }
}

/// Dimension of the moduli space; rejects unstable pairs.
pub fn dimension(g: u32, n: usize) -> Result<u32> {
    ModuliIndex::new(g, n).map(|idx| idx.dimension())
}

/// Cache key: genus plus the exponents sorted non-increasingly.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DescendantKey {
    g: u32,
    exponents: Vec<u32>,
}

impl DescendantKey {
    /// Sorts `exponents` and validates stability.
    pub fn new(g: u32, mut exponents: Vec<u32>) -> Result<Self> {
        ModuliIndex::new(g, exponents.len())?;
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { g, exponents })
    }

    pub fn from_vector(g: u32, e: &ExponentVector) -> Result<Self> {
        Self::new(g, e.entries().to_vec())
    }

    /// Caller guarantees sorted, stable input.
    pub(crate) fn from_sorted(g: u32, exponents: Vec<u32>) -> Self {
        debug_assert!(exponents.windows(2).all(|w| w[0] >= w[1]));
        Self { g, exponents }
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn index(&self) -> ModuliIndex {
        ModuliIndex {
            g: self.g,
            n: self.exponents.len(),
        }
    }
}
