//! Weak compositions: exponent vectors `e = (e_1, ..., e_n)` with nonnegative
//! entries, the spaces `E(n, d)` they live in, and the unit-transfer moves the
//! optimizer walks along.
//!
//! Enumeration is lexicographically descending, so `E(3, 2)` is visited as
//! `(2,0,0), (1,1,0), (1,0,1), (0,2,0), (0,1,1), (0,0,2)`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

/// A weak composition. Always has at least one entry.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self(entries))
    }

    pub fn from_slice(entries: &[u32]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    /// The vector `(d, 0, ..., 0)`.
    pub fn concentrated(space: CompositionSpace) -> Self {
        let mut entries = alloc::vec![0; space.n()];
        entries[0] = space.d();
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn min_entry(&self) -> u32 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    /// `max(e) - min(e) <= 1`.
    pub fn is_balanced(&self) -> bool {
        self.max_entry() - self.min_entry() <= 1
    }

    /// At most one entry is nonzero.
    pub fn is_concentrated(&self) -> bool {
        self.0.iter().filter(|&&x| x != 0).count() <= 1
    }

    /// Sum of squares, the potential that strictly drops under a balancing move.
    pub fn imbalance(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x) * u64::from(x)).sum()
    }

    /// Entries sorted non-increasingly. Two vectors share a key iff they are
    /// permutations of each other.
    pub fn canonical_key(&self) -> ExponentVector {
        let mut entries = self.0.clone();
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Self(entries)
    }

    /// `e - δ_from + δ_to`.
    pub fn transfer(&self, from: usize, to: usize) -> Result<ExponentVector> {
        let len = self.len();
        if from == to {
            return Err(Error::SameIndex { index: from });
        }
        for index in [from, to] {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, len });
            }
        }
        if self.0[from] == 0 {
            return Err(Error::EmptySource { index: from });
        }
        let mut entries = self.0.clone();
        entries[from] -= 1;
        entries[to] += 1;
        Ok(Self(entries))
    }

    /// The vector with entry `index` removed. `None` if that would leave it empty
    /// or the index is out of range.
    pub fn without(&self, index: usize) -> Option<ExponentVector> {
        if index >= self.len() || self.len() == 1 {
            return None;
        }
        let mut entries = self.0.clone();
        entries.remove(index);
        Some(Self(entries))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }
}

impl Deref for ExponentVector {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl TryFrom<Vec<u32>> for ExponentVector {
    type Error = Error;

    fn try_from(entries: Vec<u32>) -> Result<Self> {
        Self::new(entries)
    }
}

/// Renders as `(e_1,...,e_n)`.
impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// The set `E(n, d)` of weak compositions of `d` into `n` parts.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CompositionSpace {
    n: usize,
    d: u32,
}

impl CompositionSpace {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(Self { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `binomial(d + n - 1, n - 1)`, or `None` on `u128` overflow.
    pub fn size(&self) -> Option<u128> {
        binomial(u128::from(self.d) + self.n as u128 - 1, self.n as u128 - 1)
    }

    /// Fails with [`Error::BudgetExceeded`] when the space is larger than `budget`.
    pub fn check_budget(&self, budget: u128) -> Result<usize> {
        match self.size() {
            Some(size) if size <= budget && size <= usize::MAX as u128 => Ok(size as usize),
            required => Err(Error::BudgetExceeded {
                required: required.unwrap_or(u128::MAX),
                budget,
            }),
        }
    }

    pub fn contains(&self, e: &ExponentVector) -> bool {
        e.len() == self.n && e.degree() == u64::from(self.d)
    }

    pub fn check_member(&self, e: &ExponentVector) -> Result<()> {
        if e.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: e.len(),
            });
        }
        if e.degree() != u64::from(self.d) {
            return Err(Error::DegreeMismatch {
                expected: u64::from(self.d),
                found: e.degree(),
            });
        }
        Ok(())
    }

    pub fn enumerate(&self) -> Compositions {
        Compositions {
            next: Some(ExponentVector::concentrated(*self).0),
        }
    }

    /// Writing `d = a*n + b` with `0 <= b < n`: `b` entries `a + 1` followed by
    /// `n - b` entries `a`.
    pub fn balanced_representative(&self) -> ExponentVector {
        let n = self.n as u32;
        let (a, b) = (self.d / n, (self.d % n) as usize);
        let entries = (0..self.n).map(|k| if k < b { a + 1 } else { a }).collect();
        ExponentVector(entries)
    }

    /// Position of `e` in the enumeration order. `e` must be a member.
    pub fn rank(&self, e: &[u32]) -> usize {
        debug_assert_eq!(e.len(), self.n);
        let mut remaining = u128::from(self.d);
        let mut rank = 0u128;
        for (k, &x) in e.iter().enumerate().take(self.n - 1) {
            let x = u128::from(x);
            let parts = (self.n - k) as u128;
            // Vectors sharing the prefix but with a larger entry at k come first:
            // compositions of (remaining - x - 1) into `parts` pieces.
            if remaining > x {
                let rest = remaining - x - 1;
                rank += binomial(rest + parts - 1, parts - 1).expect("rank overflow");
            }
            remaining -= x;
        }
        rank as usize
    }
}

/// Lexicographically descending stream over `E(n, d)`.
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = ExponentVector;

    fn next(&mut self) -> Option<ExponentVector> {
        let current = self.next.take()?;
        let n = current.len();
        // Last nonzero entry strictly before the final slot; entries between it
        // and the final slot are zero.
        if let Some(pivot) = current[..n - 1].iter().rposition(|&x| x != 0) {
            let mut succ = current.clone();
            let tail = succ[n - 1];
            succ[n - 1] = 0;
            succ[pivot] -= 1;
            succ[pivot + 1] = tail + 1;
            self.next = Some(succ);
        }
        Some(ExponentVector(current))
    }
}

/// Checked `C(n, k)` on `u128`.
pub fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        let g = num_integer::gcd(acc, i + 1);
        let (acc_red, div) = (acc / g, (i + 1) / g);
        acc = acc_red.checked_mul((n - i) / div)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn ev(x: &[u32]) -> ExponentVector {
        ExponentVector::from_slice(x).unwrap()
    }

    fn space(n: usize, d: u32) -> CompositionSpace {
        CompositionSpace::new(n, d).unwrap()
    }

    /// Independent count: all vectors of {0..=d}^n with the right sum.
    fn brute_force(n: usize, d: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            if cur.iter().sum::<u32>() == d {
                out.push(cur.clone());
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < d {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 0;
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let all: Vec<_> = space(3, 0).enumerate().collect();
        assert_eq!(all, vec![ev(&[0, 0, 0])]);

        let all: Vec<_> = space(6, 3).enumerate().collect();
        assert_eq!(all.len(), 56);
        assert!(all.contains(&ev(&[1, 1, 1, 0, 0, 0])));
        assert!(all.contains(&ev(&[3, 0, 0, 0, 0, 0])));

        let all: Vec<_> = space(1, 4).enumerate().collect();
        assert_eq!(all, vec![ev(&[4])]);

        let all: Vec<_> = space(3, 2).enumerate().map(|e| e.into_inner()).collect();
        assert_eq!(
            all,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=6 {
            for d in 0..=8 {
                let s = space(n, d);
                let ours: Vec<Vec<u32>> = s.enumerate().map(|e| e.into_inner()).collect();
                let mut expected = brute_force(n, d);
                expected.sort_by(|a, b| b.cmp(a));
                assert_eq!(ours, expected, "n={n} d={d}");
                assert_eq!(ours.len() as u128, s.size().unwrap());
                for (k, e) in ours.iter().enumerate() {
                    assert_eq!(s.rank(e), k);
                }
            }
        }
    }

    #[test]
    fn predicates() {
        assert!(ev(&[1, 1, 1, 0, 0, 0]).is_balanced());
        assert!(!ev(&[3, 0, 0, 0, 0, 0]).is_balanced());
        assert!(ev(&[4]).is_balanced());

        assert!(ev(&[3, 0, 0, 0, 0, 0]).is_concentrated());
        assert!(!ev(&[1, 1, 1, 0, 0, 0]).is_concentrated());
        assert!(ev(&[0, 0, 0]).is_concentrated());
    }

    #[test]
    fn balanced_representative_examples() {
        assert_eq!(
            space(6, 3).balanced_representative(),
            ev(&[1, 1, 1, 0, 0, 0])
        );
        assert_eq!(space(3, 3).balanced_representative(), ev(&[1, 1, 1]));
        assert_eq!(space(4, 6).balanced_representative(), ev(&[2, 2, 1, 1]));
    }

    #[test]
    fn transfer_examples_and_errors() {
        assert_eq!(ev(&[3, 0, 0]).transfer(0, 1).unwrap(), ev(&[2, 1, 0]));
        assert_eq!(ev(&[1, 1]).transfer(1, 0).unwrap(), ev(&[2, 0]));
        assert_eq!(
            ev(&[0, 2]).transfer(0, 1),
            Err(Error::EmptySource { index: 0 })
        );
        assert_eq!(
            ev(&[1, 2]).transfer(1, 1),
            Err(Error::SameIndex { index: 1 })
        );
        assert_eq!(
            ev(&[1, 2]).transfer(0, 2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        );
    }

    #[test]
    fn imbalance_and_key_examples() {
        assert_eq!(ev(&[3, 0, 0, 0, 0, 0]).imbalance(), 9);
        assert_eq!(ev(&[1, 1, 1, 0, 0, 0]).imbalance(), 3);
        assert_eq!(ev(&[2, 2, 1, 1]).imbalance(), 10);

        assert_eq!(ev(&[0, 3, 0, 1]).canonical_key(), ev(&[3, 1, 0, 0]));
        assert_eq!(ev(&[1, 1, 1]).canonical_key(), ev(&[1, 1, 1]));
        assert_eq!(ev(&[0, 0, 5]).canonical_key(), ev(&[5, 0, 0]));
    }

    #[test]
    fn rejects_empty() {
        assert_eq!(ExponentVector::new(vec![]), Err(Error::EmptyVector));
        assert_eq!(CompositionSpace::new(0, 3), Err(Error::EmptyVector));
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![1u128];
        for n in 0..60u128 {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(binomial(n, k as u128), Some(v));
            }
            let mut next = vec![1u128; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
    }

    fn vector() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..7, 1..7)
    }

    proptest! {
        #[test]
        fn transfer_preserves_sum(e in vector(), i in 0usize..6, j in 0usize..6) {
            let e = ev(&e);
            if let Ok(t) = e.transfer(i, j) {
                prop_assert_eq!(t.degree(), e.degree());
            }
        }

        #[test]
        fn wide_transfer_lowers_imbalance(e in vector(), i in 0usize..6, j in 0usize..6) {
            let e = ev(&e);
            if i < e.len() && j < e.len() && e[i] >= e[j] + 2 {
                prop_assert!(e.transfer(i, j).unwrap().imbalance() < e.imbalance());
            }
        }

        #[test]
        fn balanced_representative_is_member(n in 1usize..10, d in 0u32..40) {
            let s = space(n, d);
            let b = s.balanced_representative();
            prop_assert!(b.is_balanced());
            prop_assert!(s.contains(&b));
        }

        #[test]
        fn canonical_key_is_permutation_invariant(
            (e, shuffled) in vector().prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle())),
        ) {
            let key = ev(&e).canonical_key();
            prop_assert_eq!(ev(&shuffled).canonical_key(), key.clone());
            prop_assert_eq!(key.canonical_key(), key);
        }
    }
}
