use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::{is_stable, Rational};
use crate::compositions::ExponentVector;
use crate::error::{Error, Result};

pub(crate) fn factorial(m: u64) -> BigInt {
    (2..=m).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(n-3)! / (e_1! ... e_n!)`, the genus-zero value when `Σe = n - 3`.
pub fn genus0_closed(e: &[u32]) -> Result<Rational> {
    let n = e.len();
    if n < 3 {
        return Err(Error::TooFewPoints { n });
    }
    let degree: u64 = e.iter().map(|&x| u64::from(x)).sum();
    let expected = n as u64 - 3;
    if degree != expected {
        return Err(Error::DegreeMismatch {
            expected,
            found: degree,
        });
    }
    let denom = e
        .iter()
        .fold(BigInt::one(), |acc, &x| acc * factorial(u64::from(x)));
    Ok(Rational::new(factorial(expected), denom))
}

/// `<τ_{3g-2}>_g = 1 / (24^g g!)`.
pub fn one_point_value(g: u32) -> Result<Rational> {
    if g == 0 {
        return Err(Error::ZeroGenus);
    }
    let denom = num_traits::pow(BigInt::from(24u32), g as usize) * factorial(u64::from(g));
    Ok(Rational::new(BigInt::one(), denom))
}

/// Terms of the string equation removing the `τ_0` at `index`: one vector per
/// other entry `a_j >= 1`, with that entry decremented. Entries equal to zero
/// would produce `τ_{-1}` and are skipped.
pub fn string_apply(g: u32, e: &ExponentVector, index: usize) -> Result<Vec<ExponentVector>> {
    e.check_index(index)?;
    if e[index] != 0 {
        return Err(Error::UnexpectedEntry {
            index,
            expected: 0,
            found: e[index],
        });
    }
    let reduced = e.without(index).ok_or(Error::Unstable { g, n: 0 })?;
    if !is_stable(g, reduced.len()) {
        return Err(Error::Unstable {
            g,
            n: reduced.len(),
        });
    }
    let mut terms = Vec::new();
    for j in 0..reduced.len() {
        if reduced[j] > 0 {
            let mut entries = reduced.entries().to_vec();
            entries[j] -= 1;
            terms.push(ExponentVector::new(entries)?);
        }
    }
    Ok(terms)
}

/// Dilaton equation at a `τ_1` insertion: returns `(2g - 2 + (n-1), e without
/// entry index)` with `<e>_g = factor * <reduced>_g`.
pub fn dilaton_apply(
    g: u32,
    e: &ExponentVector,
    index: usize,
) -> Result<(Rational, ExponentVector)> {
    e.check_index(index)?;
    if e[index] != 1 {
        return Err(Error::UnexpectedEntry {
            index,
            expected: 1,
            found: e[index],
        });
    }
    let reduced = e.without(index).ok_or(Error::Unstable { g, n: 0 })?;
    let m = reduced.len();
    if !is_stable(g, m) {
        return Err(Error::Unstable { g, n: m });
    }
    let factor = BigInt::from(2 * i64::from(g) - 2 + m as i64);
    Ok((Rational::from_integer(factor), reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ev(x: &[u32]) -> ExponentVector {
        ExponentVector::from_slice(x).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn genus0_examples() {
        assert_eq!(genus0_closed(&[1, 1, 1, 0, 0, 0]), Ok(q(6, 1)));
        assert_eq!(genus0_closed(&[0, 0, 0]), Ok(q(1, 1)));
        assert_eq!(genus0_closed(&[2, 0, 0, 0, 0]), Ok(q(1, 1)));
        assert_eq!(genus0_closed(&[3, 0, 0, 0, 0, 0]), Ok(q(1, 1)));
        assert_eq!(genus0_closed(&[1, 0]), Err(Error::TooFewPoints { n: 2 }));
        assert_eq!(
            genus0_closed(&[1, 0, 0]),
            Err(Error::DegreeMismatch {
                expected: 0,
                found: 1
            })
        );
    }

    #[test]
    fn one_point_examples() {
        assert_eq!(one_point_value(1), Ok(q(1, 24)));
        assert_eq!(one_point_value(2), Ok(q(1, 1152)));
        assert_eq!(one_point_value(3), Ok(q(1, 82944)));
        assert_eq!(one_point_value(0), Err(Error::ZeroGenus));
    }

    #[test]
    fn string_examples() {
        assert_eq!(string_apply(1, &ev(&[2, 0]), 1), Ok(vec![ev(&[1])]));
        assert_eq!(
            string_apply(0, &ev(&[1, 0, 0, 0]), 3),
            Ok(vec![ev(&[0, 0, 0])])
        );
        assert_eq!(
            string_apply(1, &ev(&[0, 1, 1]), 0),
            Ok(vec![ev(&[0, 1]), ev(&[1, 0])])
        );
        assert!(matches!(
            string_apply(1, &ev(&[0, 1, 1]), 1),
            Err(Error::UnexpectedEntry { .. })
        ));
        assert_eq!(
            string_apply(0, &ev(&[0, 0, 0]), 0),
            Err(Error::Unstable { g: 0, n: 2 })
        );
    }

    #[test]
    fn dilaton_examples() {
        assert_eq!(dilaton_apply(1, &ev(&[1, 1]), 0), Ok((q(1, 1), ev(&[1]))));
        assert_eq!(
            dilaton_apply(2, &ev(&[1, 2, 2, 2]), 0),
            Ok((q(5, 1), ev(&[2, 2, 2])))
        );
        assert_eq!(
            dilaton_apply(0, &ev(&[1, 0, 0, 0]), 0),
            Ok((q(1, 1), ev(&[0, 0, 0])))
        );
        assert_eq!(
            dilaton_apply(1, &ev(&[1]), 0),
            Err(Error::Unstable { g: 1, n: 0 })
        );
        assert!(dilaton_apply(1, &ev(&[2, 0]), 0).is_err());
    }
}
