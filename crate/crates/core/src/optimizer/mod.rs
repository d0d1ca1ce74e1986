//! Optimization over `E(n, d)` for an arbitrary rational-valued oracle.
//!
//! If the oracle is symmetric under permutations, log-concave along every
//! two-coordinate exchange, and strictly positive, then moving one unit from a
//! larger entry to a smaller one (when they differ by at least two) never
//! lowers its value, and moving everything onto a maximal entry never raises
//! it. So the maximum sits on a balanced vector and the minimum on a
//! concentrated one. Nothing here assumes those hypotheses; they are checked by
//! [`check_hypotheses`].

mod moves;
mod oracles;
mod search;
mod slice;

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::cell::RefCell;

use crate::compositions::{CompositionSpace, ExponentVector};
use crate::descendants::Rational;
use crate::error::Result;

pub use moves::{
    balance_iterate, balancing_move, balancing_step, concentrate_iterate, concentrating_move,
    concentrating_step, MoveTrace, Step,
};
pub use oracles::{DescendantOracle, Expansion, FnOracle, Multinomial, ProductOracle};
pub use search::{
    brute_force_extrema, check_hypotheses, evaluate_space, Extrema, HypothesisReport,
    LogConcavityViolation, SpaceValues, SymmetryViolation,
};
pub use slice::{
    is_log_concave, is_palindromic, is_unimodal_centered, ratios, slice_sequence, SliceSequence,
};

/// A function `D : E(n, d) -> Q`.
pub trait Oracle {
    fn name(&self) -> String;

    fn evaluate(&self, space: &CompositionSpace, e: &ExponentVector) -> Result<Rational>;

    /// Declares `D(e ∘ σ) = D(e)`. Only used to share memo entries across a
    /// permutation orbit; [`check_hypotheses`] never trusts it.
    fn is_symmetric(&self) -> bool {
        false
    }
}

impl<O: Oracle + ?Sized> Oracle for &O {
    fn name(&self) -> String {
        (**self).name()
    }

    fn evaluate(&self, space: &CompositionSpace, e: &ExponentVector) -> Result<Rational> {
        (**self).evaluate(space, e)
    }

    fn is_symmetric(&self) -> bool {
        (**self).is_symmetric()
    }
}

/// Caches oracle values per `(space, canonical key)` for symmetric oracles and
/// per exact vector otherwise.
pub struct Memoized<O> {
    inner: O,
    memo: RefCell<BTreeMap<(CompositionSpace, ExponentVector), Rational>>,
}

impl<O: Oracle> Memoized<O> {
    pub fn new(inner: O) -> Self {
        Self {
            inner,
            memo: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    pub fn len(&self) -> usize {
        self.memo.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<O: Oracle> Oracle for Memoized<O> {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn evaluate(&self, space: &CompositionSpace, e: &ExponentVector) -> Result<Rational> {
        let key = if self.inner.is_symmetric() {
            e.canonical_key()
        } else {
            e.clone()
        };
        if let Some(v) = self.memo.borrow().get(&(*space, key.clone())) {
            return Ok(v.clone());
        }
        let v = self.inner.evaluate(space, e)?;
        self.memo.borrow_mut().insert((*space, key), v.clone());
        Ok(v)
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }
}
