use alloc::vec::Vec;

use super::Oracle;
use crate::compositions::{CompositionSpace, ExponentVector};
use crate::descendants::Rational;
use crate::error::Result;

/// One applied move: the new vector with the oracle values before and after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub vector: ExponentVector,
    pub before: Rational,
    pub after: Rational,
}

/// The vectors visited by an iteration, with their values, start to finish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    steps: Vec<(ExponentVector, Rational)>,
}

impl MoveTrace {
    pub fn steps(&self) -> &[(ExponentVector, Rational)] {
        &self.steps
    }

    /// Number of recorded vectors, including the start.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of moves applied.
    pub fn moves(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn start(&self) -> &(ExponentVector, Rational) {
        &self.steps[0]
    }

    pub fn terminal(&self) -> &(ExponentVector, Rational) {
        self.steps.last().expect("trace holds its start")
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].1 <= w[1].1)
    }

    pub fn is_non_increasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].1 >= w[1].1)
    }

    /// Adjacent vectors differ by exactly one unit transfer, and re-evaluating
    /// the oracle reproduces every recorded value.
    pub fn is_consistent<O: Oracle + ?Sized>(
        &self,
        oracle: &O,
        space: &CompositionSpace,
    ) -> Result<bool> {
        for w in self.steps.windows(2) {
            if !is_unit_transfer(&w[0].0, &w[1].0) {
                return Ok(false);
            }
        }
        for (e, v) in &self.steps {
            if oracle.evaluate(space, e)? != *v {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn is_unit_transfer(a: &ExponentVector, b: &ExponentVector) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut down = 0;
    let mut up = 0;
    for (&x, &y) in a.iter().zip(b.iter()) {
        match i64::from(y) - i64::from(x) {
            0 => {}
            -1 => down += 1,
            1 => up += 1,
            _ => return false,
        }
    }
    down == 1 && up == 1
}

fn first_max(e: &ExponentVector) -> usize {
    let m = e.max_entry();
    e.iter().position(|&x| x == m).expect("nonempty")
}

/// `(from, to)` for the next balancing move: `from` is the lowest index of a
/// maximal entry, `to` the lowest index of a minimal entry. `None` once the
/// vector is balanced.
pub fn balancing_move(e: &ExponentVector) -> Option<(usize, usize)> {
    let from = first_max(e);
    let min = e.min_entry();
    let to = e.iter().position(|&x| x == min).expect("nonempty");
    (e[from] >= e[to] + 2).then_some((from, to))
}

/// `(from, to)` for the next concentrating move: `to` is the lowest index of a
/// maximal entry, `from` the lowest other nonzero index. `None` once the
/// vector is concentrated.
pub fn concentrating_move(e: &ExponentVector) -> Option<(usize, usize)> {
    let to = first_max(e);
    let from = e.iter().enumerate().position(|(k, &x)| k != to && x > 0)?;
    Some((from, to))
}

fn step_with<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    e: &ExponentVector,
    before: Rational,
    mv: Option<(usize, usize)>,
) -> Result<Option<Step>> {
    let Some((from, to)) = mv else {
        return Ok(None);
    };
    let vector = e.transfer(from, to)?;
    let after = oracle.evaluate(space, &vector)?;
    Ok(Some(Step {
        vector,
        before,
        after,
    }))
}

/// Moves one unit from a largest to a smallest entry if they differ by two or
/// more.
pub fn balancing_step<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    e: &ExponentVector,
) -> Result<Option<Step>> {
    space.check_member(e)?;
    let before = oracle.evaluate(space, e)?;
    step_with(oracle, space, e, before, balancing_move(e))
}

/// Moves one unit from another nonzero entry onto a largest entry.
pub fn concentrating_step<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    e: &ExponentVector,
) -> Result<Option<Step>> {
    space.check_member(e)?;
    let before = oracle.evaluate(space, e)?;
    step_with(oracle, space, e, before, concentrating_move(e))
}

fn iterate<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    e: &ExponentVector,
    choose: fn(&ExponentVector) -> Option<(usize, usize)>,
) -> Result<MoveTrace> {
    space.check_member(e)?;
    let mut current = e.clone();
    let mut value = oracle.evaluate(space, &current)?;
    let mut steps = alloc::vec![(current.clone(), value.clone())];
    while let Some(step) = step_with(oracle, space, &current, value, choose(&current))? {
        current = step.vector;
        value = step.after;
        steps.push((current.clone(), value.clone()));
    }
    Ok(MoveTrace { steps })
}

/// Balancing moves until the vector is balanced. Terminates because each move
/// strictly lowers the sum of squares.
pub fn balance_iterate<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    e: &ExponentVector,
) -> Result<MoveTrace> {
    iterate(oracle, space, e, balancing_move)
}

/// Concentrating moves until at most one entry is nonzero. Terminates because
/// each move raises the maximum entry, which is bounded by `d`.
pub fn concentrate_iterate<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    e: &ExponentVector,
) -> Result<MoveTrace> {
    iterate(oracle, space, e, concentrating_move)
}
