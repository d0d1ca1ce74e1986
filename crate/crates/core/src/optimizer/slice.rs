use alloc::vec::Vec;

use num_traits::Zero;

use super::Oracle;
use crate::compositions::{CompositionSpace, ExponentVector};
use crate::descendants::Rational;
use crate::error::{Error, Result};

/// Values of an oracle along `t ↦ e^{(t)}`, where `e^{(t)}` agrees with `e`
/// off `{i, j}` and has `t` at `i`, `q - t` at `j`, `q = e_i + e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSequence {
    values: Vec<Rational>,
    i: usize,
    j: usize,
    base: ExponentVector,
}

impl SliceSequence {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn q(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// The vector the slice was taken through.
    pub fn base(&self) -> &ExponentVector {
        &self.base
    }

    /// `e^{(t)}`.
    pub fn vector_at(&self, t: u32) -> ExponentVector {
        slice_vector(&self.base, self.i, self.j, t)
    }

    pub fn is_palindromic(&self) -> bool {
        is_palindromic(&self.values)
    }

    pub fn is_log_concave(&self) -> Result<bool> {
        is_log_concave(&self.values)
    }

    pub fn is_unimodal_centered(&self) -> bool {
        is_unimodal_centered(&self.values)
    }

    pub fn ratios(&self) -> Result<Vec<Rational>> {
        ratios(&self.values)
    }
}

fn slice_vector(base: &ExponentVector, i: usize, j: usize, t: u32) -> ExponentVector {
    let q = base[i] + base[j];
    let mut entries = base.entries().to_vec();
    entries[i] = t;
    entries[j] = q - t;
    ExponentVector::new(entries).expect("nonempty")
}

pub fn slice_sequence<O: Oracle + ?Sized>(
    oracle: &O,
    space: &CompositionSpace,
    e: &ExponentVector,
    i: usize,
    j: usize,
) -> Result<SliceSequence> {
    e.check_index(i)?;
    e.check_index(j)?;
    if i == j {
        return Err(Error::SameIndex { index: i });
    }
    space.check_member(e)?;
    let q = e[i] + e[j];
    let values = (0..=q)
        .map(|t| oracle.evaluate(space, &slice_vector(e, i, j, t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SliceSequence {
        values,
        i,
        j,
        base: e.clone(),
    })
}

/// `S_t = S_{q-t}` for all `t`.
pub fn is_palindromic(values: &[Rational]) -> bool {
    values.iter().eq(values.iter().rev())
}

/// `S_t^2 >= S_{t-1} S_{t+1}` at every interior `t`. Entries must be positive.
pub fn is_log_concave(values: &[Rational]) -> Result<bool> {
    check_positive(values)?;
    Ok(values.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2]))
}

/// Weakly increasing while `2t < q`, weakly decreasing while `2t > q`.
pub fn is_unimodal_centered(values: &[Rational]) -> bool {
    let q = values.len().saturating_sub(1);
    (0..values.len()).all(|t| {
        if 2 * t < q {
            values[t] <= values[t + 1]
        } else if 2 * t > q {
            values[t] <= values[t - 1]
        } else {
            true
        }
    })
}

/// `R_t = S_{t+1} / S_t` for `0 <= t < q`. Entries must be positive.
pub fn ratios(values: &[Rational]) -> Result<Vec<Rational>> {
    check_positive(values)?;
    Ok(values.windows(2).map(|w| &w[1] / &w[0]).collect())
}

fn check_positive(values: &[Rational]) -> Result<()> {
    match values.iter().position(|v| v <= &Rational::zero()) {
        Some(index) => Err(Error::NonPositive { index }),
        None => Ok(()),
    }
}
