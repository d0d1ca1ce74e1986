use alloc::vec::Vec;

use num_traits::Zero;

use super::Oracle;
use crate::compositions::{CompositionSpace, ExponentVector};
use crate::descendants::Rational;
use crate::error::Result;

/// Every vector of `E(n, d)` in enumeration order with its oracle value.
#[derive(Clone, Debug)]
pub struct SpaceValues {
    space: CompositionSpace,
    vectors: Vec<ExponentVector>,
    values: Vec<Rational>,
}

impl SpaceValues {
    pub fn space(&self) -> CompositionSpace {
        self.space
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.vectors.iter().zip(&self.values)
    }

    pub fn value(&self, e: &[u32]) -> &Rational {
        &self.values[self.space.rank(e)]
    }

    pub fn extrema(&self) -> Extrema {
        let max = self
            .values
            .iter()
            .max()
            .expect("spaces are nonempty")
            .clone();
        let min = self
            .values
            .iter()
            .min()
            .expect("spaces are nonempty")
            .clone();
        let pick = |target: &Rational| {
            self.iter()
                .filter(|(_, v)| *v == target)
                .map(|(e, _)| e.clone())
                .collect()
        };
        Extrema {
            argmax: pick(&max),
            argmin: pick(&min),
            max,
            min,
        }
    }

    /// Checks symmetry, log-concavity and positivity exhaustively. Symmetry
    /// compares every vector against its sorted representative, evaluated
    /// separately.
    pub fn hypotheses(&self) -> HypothesisReport {
        let mut report = HypothesisReport::default();
        for (e, v) in self.iter() {
            if report.symmetry.is_none() {
                let key = e.canonical_key();
                if self.value(&key) != v {
                    report.symmetry = Some(SymmetryViolation {
                        representative: key,
                        vector: e.clone(),
                    });
                }
            }
            if report.positivity.is_none() && *v <= Rational::zero() {
                report.positivity = Some(e.clone());
            }
            if report.log_concavity.is_none() {
                report.log_concavity = self.log_concavity_at(e, v);
            }
        }
        report
    }

    fn log_concavity_at(&self, e: &ExponentVector, v: &Rational) -> Option<LogConcavityViolation> {
        let square = v * v;
        let mut shifted = e.entries().to_vec();
        // D(e - δ_i + δ_j) D(e + δ_i - δ_j) is symmetric in (i, j)
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] == 0 || e[j] == 0 {
                    continue;
                }
                shifted[i] -= 1;
                shifted[j] += 1;
                let left = self.value(&shifted).clone();
                shifted[i] += 2;
                shifted[j] -= 2;
                let right = self.value(&shifted);
                shifted[i] -= 1;
                shifted[j] += 1;
                if square < left * right {
                    return Some(LogConcavityViolation {
                        vector: e.clone(),
                        i,
                        j,
                    });
                }
            }
        }
        None
    }
}

/// Evaluates the oracle on all of `E(n, d)`, refusing spaces larger than
/// `budget`.
pub fn evaluate_space<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    budget: u128,
) -> Result<SpaceValues> {
    let size = space.check_budget(budget)?;
    let mut vectors = Vec::with_capacity(size);
    let mut values = Vec::with_capacity(size);
    for e in space.enumerate() {
        values.push(oracle.evaluate(space, &e)?);
        vectors.push(e);
    }
    Ok(SpaceValues {
        space: *space,
        vectors,
        values,
    })
}

/// Exact extrema with complete witness sets, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extrema {
    pub max: Rational,
    pub argmax: Vec<ExponentVector>,
    pub min: Rational,
    pub argmin: Vec<ExponentVector>,
}

pub fn brute_force_extrema<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    budget: u128,
) -> Result<Extrema> {
    Ok(evaluate_space(oracle, space, budget)?.extrema())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryViolation {
    /// Sorted representative of the orbit.
    pub representative: ExponentVector,
    /// A member of the orbit whose value differs from the representative's.
    pub vector: ExponentVector,
}

/// `D(e)^2 < D(e - δ_i + δ_j) D(e + δ_i - δ_j)`, 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogConcavityViolation {
    pub vector: ExponentVector,
    pub i: usize,
    pub j: usize,
}

/// First counterexample found for each hypothesis, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HypothesisReport {
    pub symmetry: Option<SymmetryViolation>,
    pub log_concavity: Option<LogConcavityViolation>,
    pub positivity: Option<ExponentVector>,
}

impl HypothesisReport {
    pub fn symmetric(&self) -> bool {
        self.symmetry.is_none()
    }

    pub fn log_concave(&self) -> bool {
        self.log_concavity.is_none()
    }

    pub fn positive(&self) -> bool {
        self.positivity.is_none()
    }

    pub fn all_hold(&self) -> bool {
        self.symmetric() && self.log_concave() && self.positive()
    }
}

pub fn check_hypotheses<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    budget: u128,
) -> Result<HypothesisReport> {
    Ok(evaluate_space(oracle, space, budget)?.hypotheses())
}
