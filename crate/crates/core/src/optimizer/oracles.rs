use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::Oracle;
use crate::compositions::{CompositionSpace, ExponentVector};
use crate::descendants::{factorial, DescendantStore, Engine, ModuliIndex, Rational};
use crate::error::{Error, Result};

/// `d! / (e_1! ... e_n!)`. On `E(n, n - 3)` this is the genus-zero descendant.
#[derive(Clone, Copy, Debug, Default)]
pub struct Multinomial;

impl Oracle for Multinomial {
    fn name(&self) -> String {
        "multinomial".into()
    }

    fn evaluate(&self, space: &CompositionSpace, e: &ExponentVector) -> Result<Rational> {
        space.check_member(e)?;
        let denom = e
            .iter()
            .fold(BigInt::one(), |acc, &x| acc * factorial(u64::from(x)));
        Ok(Rational::new(factorial(u64::from(space.d())), denom))
    }

    fn is_symmetric(&self) -> bool {
        true
    }
}

/// `D(e) = scale * f(e_1) ... f(e_n)` for a weight sequence `f`.
///
/// Symmetric by construction; log-concave whenever `f` is, and positive when
/// `f` and `scale` are.
#[derive(Clone, Debug)]
pub struct ProductOracle {
    scale: Rational,
    weights: Vec<Rational>,
}

impl ProductOracle {
    pub fn new(scale: Rational, weights: Vec<Rational>) -> Self {
        Self { scale, weights }
    }

    /// `f(0) = first`, `f(t) = f(t-1) * ratios[t-1]`. Non-increasing positive
    /// ratios give a positive log-concave `f`.
    pub fn from_ratios(scale: Rational, first: Rational, ratios: &[Rational]) -> Self {
        let mut weights = Vec::with_capacity(ratios.len() + 1);
        weights.push(first);
        for r in ratios {
            let next = weights.last().expect("nonempty") * r;
            weights.push(next);
        }
        Self::new(scale, weights)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

impl Oracle for ProductOracle {
    fn name(&self) -> String {
        format!("product[{}]", self.weights.len())
    }

    fn evaluate(&self, space: &CompositionSpace, e: &ExponentVector) -> Result<Rational> {
        space.check_member(e)?;
        let mut acc = self.scale.clone();
        for &x in e.iter() {
            let w = self.weights.get(x as usize).ok_or_else(|| Error::Oracle {
                name: self.name(),
                reason: format!("no weight for exponent {x}"),
            })?;
            acc *= w;
        }
        Ok(acc)
    }

    fn is_symmetric(&self) -> bool {
        true
    }
}

/// Wraps a closure as an oracle; the declared symmetry is whatever the caller
/// says.
pub struct FnOracle<F> {
    name: String,
    symmetric: bool,
    f: F,
}

impl<F> FnOracle<F>
where
    F: Fn(&ExponentVector) -> Rational,
{
    pub fn new(name: impl Into<String>, symmetric: bool, f: F) -> Self {
        Self {
            name: name.into(),
            symmetric,
            f,
        }
    }
}

impl<F> Oracle for FnOracle<F>
where
    F: Fn(&ExponentVector) -> Rational,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn evaluate(&self, space: &CompositionSpace, e: &ExponentVector) -> Result<Rational> {
        space.check_member(e)?;
        Ok((self.f)(e))
    }

    fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

/// How [`DescendantOracle`] evaluates a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Expansion {
    /// Straight through the engine's cache, keyed on the sorted multiset.
    #[default]
    Cached,
    /// One recursion step on the first positive entry of the vector as given,
    /// so permuted vectors are expanded differently.
    Ordered,
}

/// The descendant integral in fixed genus, `e ↦ <τ_{e_1} ... τ_{e_n}>_g`.
pub struct DescendantOracle<'a, S> {
    engine: &'a Engine<S>,
    g: u32,
    expansion: Expansion,
}

impl<'a, S: DescendantStore> DescendantOracle<'a, S> {
    pub fn new(engine: &'a Engine<S>, g: u32) -> Self {
        Self {
            engine,
            g,
            expansion: Expansion::Cached,
        }
    }

    pub fn with_expansion(mut self, expansion: Expansion) -> Self {
        self.expansion = expansion;
        self
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn space(&self, n: usize) -> Result<CompositionSpace> {
        Ok(ModuliIndex::new(self.g, n)?.space())
    }
}

impl<S: DescendantStore> Oracle for DescendantOracle<'_, S> {
    fn name(&self) -> String {
        format!("descendant(g={})", self.g)
    }

    fn evaluate(&self, space: &CompositionSpace, e: &ExponentVector) -> Result<Rational> {
        space.check_member(e)?;
        let expected = self.space(e.len())?;
        if expected != *space {
            return Err(Error::DegreeMismatch {
                expected: u64::from(expected.d()),
                found: u64::from(space.d()),
            });
        }
        match (self.expansion, e.iter().position(|&x| x > 0)) {
            (Expansion::Ordered, Some(pivot)) => self.engine.descendant_via_pivot(self.g, e, pivot),
            _ => self.engine.descendant(self.g, e),
        }
    }

    fn is_symmetric(&self) -> bool {
        self.expansion == Expansion::Cached
    }
}
