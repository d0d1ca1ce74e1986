use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::formulas::factorial;
use super::{is_stable, DescendantKey, DescendantStore, LocalStore, ModuliIndex, Rational};
use crate::compositions::binomial;
use crate::error::{Error, Result};

pub const DEFAULT_DEPTH_LIMIT: u32 = 60;

// Factorial and double-factorial tables are precomputed up to this dimension;
// anything larger is computed on demand.
const TABLE_CAP: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Largest dimension `3g - 3 + n` the engine accepts at the top level.
    pub depth_limit: u32,
    /// Use the closed multinomial formula in genus zero.
    pub genus0_closed_form: bool,
    /// Use the string and dilaton equations before falling back to the recursion.
    pub string_dilaton: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            depth_limit: DEFAULT_DEPTH_LIMIT,
            genus0_closed_form: true,
            string_dilaton: true,
        }
    }
}

impl EngineConfig {
    /// Only the recursion and its two base cases.
    pub fn recursion_only() -> Self {
        Self {
            genus0_closed_form: false,
            string_dilaton: false,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub hits: usize,
    pub misses: usize,
}

/// Memoizing evaluator for descendant integrals.
pub struct Engine<S = LocalStore> {
    store: S,
    config: EngineConfig,
    factorials: Vec<BigInt>,
    // odd[m] = (2m - 1)!!, so odd[0] = (-1)!! = 1
    odd: Vec<BigInt>,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl Engine<LocalStore> {
    pub fn new() -> Self {
        Self::with_store(LocalStore::new(), EngineConfig::default())
    }

    pub fn with_config(config: EngineConfig) -> Self {
        Self::with_store(LocalStore::new(), config)
    }
}

impl Default for Engine<LocalStore> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: DescendantStore> Engine<S> {
    pub fn with_store(store: S, config: EngineConfig) -> Self {
        let top = config.depth_limit.min(TABLE_CAP) as usize + 3;
        let mut factorials = Vec::with_capacity(top + 1);
        factorials.push(BigInt::one());
        for k in 1..=top {
            let next = &factorials[k - 1] * k;
            factorials.push(next);
        }
        let mut odd = Vec::with_capacity(top + 1);
        odd.push(BigInt::one());
        for m in 1..=top {
            let next = &odd[m - 1] * (2 * m - 1);
            odd.push(next);
        }
        Self {
            store,
            config,
            factorials,
            odd,
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
        }
    }

    pub fn store(&self) -> &S {
        &self.store
    }

    pub fn config(&self) -> EngineConfig {
        self.config
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    /// `<τ_{e_1} ... τ_{e_n}>_g`, zero unless `Σe = 3g - 3 + n`.
    pub fn descendant(&self, g: u32, e: &[u32]) -> Result<Rational> {
        let key = DescendantKey::new(g, e.to_vec())?;
        self.compute_with_cache(&key)
    }

    pub fn compute_with_cache(&self, key: &DescendantKey) -> Result<Rational> {
        let d = key.index().dimension();
        let degree: u64 = key.exponents().iter().map(|&x| u64::from(x)).sum();
        if degree != u64::from(d) {
            return Ok(Rational::zero());
        }
        self.check_depth(d)?;
        Ok(self.value(key.g(), key.exponents()))
    }

    /// Evaluates through one recursion step pivoting on `e[pivot]` as given,
    /// without sorting first. Sub-terms go through the cache. Used to check
    /// that the result does not depend on the pivot or the ordering.
    pub fn descendant_via_pivot(&self, g: u32, e: &[u32], pivot: usize) -> Result<Rational> {
        let idx = ModuliIndex::new(g, e.len())?;
        if pivot >= e.len() {
            return Err(Error::IndexOutOfRange {
                index: pivot,
                len: e.len(),
            });
        }
        if e[pivot] == 0 {
            return Err(Error::EmptySource { index: pivot });
        }
        let degree: u64 = e.iter().map(|&x| u64::from(x)).sum();
        if degree != u64::from(idx.dimension()) {
            return Ok(Rational::zero());
        }
        self.check_depth(idx.dimension())?;
        if (g, e) == (1, &[1][..]) {
            return Ok(Rational::new(BigInt::one(), BigInt::from(24)));
        }
        let others: Vec<u32> = e
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != pivot)
            .map(|(_, &x)| x)
            .collect();
        Ok(self.recursion(g, e[pivot] - 1, &others))
    }

    fn check_depth(&self, d: u32) -> Result<()> {
        if d > self.config.depth_limit {
            return Err(Error::DepthLimit {
                dimension: u64::from(d),
                limit: self.config.depth_limit,
            });
        }
        Ok(())
    }

    fn factorial(&self, m: u32) -> BigInt {
        match self.factorials.get(m as usize) {
            Some(f) => f.clone(),
            None => factorial(u64::from(m)),
        }
    }

    /// `(2m - 1)!!`.
    fn odd_double_factorial(&self, m: u32) -> BigInt {
        match self.odd.get(m as usize) {
            Some(v) => v.clone(),
            None => (1..=m).fold(BigInt::one(), |acc, k| acc * (2 * k - 1)),
        }
    }

    /// Correlator on an arbitrary (possibly unstable, unsorted) list: zero for
    /// unstable pairs and wrong degree.
    fn correlator(&self, g: u32, mut exps: Vec<u32>) -> Rational {
        if exps.is_empty() || !is_stable(g, exps.len()) {
            return Rational::zero();
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        self.value(g, &exps)
    }

    /// `exps` sorted non-increasingly, `(g, exps.len())` stable.
    fn value(&self, g: u32, exps: &[u32]) -> Rational {
        let n = exps.len();
        let degree: u64 = exps.iter().map(|&x| u64::from(x)).sum();
        if degree + 3 != 3 * u64::from(g) + n as u64 {
            return Rational::zero();
        }
        let key = DescendantKey::from_sorted(g, exps.to_vec());
        if let Some(v) = self.store.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v;
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let v = self.dispatch(g, exps);
        self.store.insert(key, v.clone());
        v
    }

    fn dispatch(&self, g: u32, exps: &[u32]) -> Rational {
        let n = exps.len();
        if g == 0 && self.config.genus0_closed_form {
            let denom = exps
                .iter()
                .fold(BigInt::one(), |acc, &x| acc * self.factorial(x));
            return Rational::new(self.factorial(n as u32 - 3), denom);
        }
        match (g, exps) {
            (0, [0, 0, 0]) => return Rational::one(),
            (1, [1]) => return Rational::new(BigInt::one(), BigInt::from(24)),
            _ => {}
        }
        if self.config.string_dilaton && is_stable(g, n - 1) {
            if exps[n - 1] == 0 {
                return self.string(g, exps);
            }
            if let Some(pos) = exps.iter().position(|&x| x == 1) {
                let mut rest = exps.to_vec();
                rest.remove(pos);
                let factor = BigInt::from(2 * i64::from(g) - 3 + n as i64);
                return self.value(g, &rest) * factor;
            }
        }
        self.recursion(g, exps[0] - 1, &exps[1..])
    }

    /// String equation on the trailing zero of a sorted list.
    fn string(&self, g: u32, exps: &[u32]) -> Rational {
        let rest = &exps[..exps.len() - 1];
        let mut total = Rational::zero();
        let mut k = 0;
        while k < rest.len() {
            let value = rest[k];
            let run = rest[k..].iter().take_while(|&&x| x == value).count();
            if value > 0 {
                let mut term = rest.to_vec();
                // decrementing the last of a run keeps the list sorted
                term[k + run - 1] -= 1;
                total += self.value(g, &term) * BigInt::from(run);
            }
            k += run;
        }
        total
    }

    /// `<τ_{k+1} Π τ_{d_j}>_g` via the Dijkgraaf–Verlinde–Verlinde recursion:
    ///
    /// ```text
    /// (2k+3)!! <τ_{k+1} Π τ_{d_j}>_g
    ///   = Σ_j (2k+2d_j+1)!!/(2d_j-1)!! <τ_{k+d_j} Π_{i≠j} τ_{d_i}>_g
    ///   + 1/2 Σ_{a+b=k-1} (2a+1)!!(2b+1)!! [ <τ_a τ_b Π τ_{d_j}>_{g-1}
    ///       + Σ_{g'+g''=g, I⊔J} <τ_a Π_I τ_{d_i}>_{g'} <τ_b Π_J τ_{d_i}>_{g''} ]
    /// ```
    fn recursion(&self, g: u32, k: u32, others: &[u32]) -> Rational {
        let groups = group_counts(others);
        let mut total = Rational::zero();

        for (idx, &(dj, count)) in groups.iter().enumerate() {
            let coeff = self.odd_double_factorial(k + dj + 1) / self.odd_double_factorial(dj);
            let mut term = Vec::with_capacity(others.len());
            for (jdx, &(v, c)) in groups.iter().enumerate() {
                let c = if jdx == idx { c - 1 } else { c };
                term.extend(core::iter::repeat_n(v, c));
            }
            term.push(k + dj);
            total += self.correlator(g, term) * (coeff * BigInt::from(count));
        }

        if k >= 1 {
            let mut quadratic = Rational::zero();
            for a in 0..k {
                let b = k - 1 - a;
                let coeff = self.odd_double_factorial(a + 1) * self.odd_double_factorial(b + 1);
                let mut inner = Rational::zero();
                if g >= 1 {
                    let mut term = others.to_vec();
                    term.push(a);
                    term.push(b);
                    inner += self.correlator(g - 1, term);
                }
                for_each_submultiset(&groups, |left, right, multiplicity| {
                    // the left factor's degree pins its genus
                    let left_sum: u64 = left.iter().map(|&x| u64::from(x)).sum();
                    let numerator = i64::from(a) + left_sum as i64 - left.len() as i64 + 2;
                    if numerator < 0 || numerator % 3 != 0 {
                        return;
                    }
                    let g1 = (numerator / 3) as u32;
                    if g1 > g {
                        return;
                    }
                    let mut lhs = left.to_vec();
                    lhs.push(a);
                    let x = self.correlator(g1, lhs);
                    if x.is_zero() {
                        return;
                    }
                    let mut rhs = right.to_vec();
                    rhs.push(b);
                    let y = self.correlator(g - g1, rhs);
                    inner += x * y * BigInt::from(multiplicity);
                });
                quadratic += inner * coeff;
            }
            total += quadratic / BigInt::from(2);
        }

        total / self.odd_double_factorial(k + 2)
    }
}

/// Run-length encoding of the values in `xs` (order of first appearance).
fn group_counts(xs: &[u32]) -> Vec<(u32, usize)> {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for x in sorted {
        match groups.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => groups.push((x, 1)),
        }
    }
    groups
}

/// Calls `f(left, right, multiplicity)` for every split of the multiset into
/// an ordered pair of sub-multisets; `multiplicity` counts the index subsets
/// realising it.
fn for_each_submultiset(groups: &[(u32, usize)], mut f: impl FnMut(&[u32], &[u32], u128)) {
    let mut chosen = alloc::vec![0usize; groups.len()];
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut multiplicity = 1u128;
        for (&(v, c), &take) in groups.iter().zip(&chosen) {
            left.extend(core::iter::repeat_n(v, take));
            right.extend(core::iter::repeat_n(v, c - take));
            multiplicity *= binomial(c as u128, take as u128).expect("small multiset");
        }
        f(&left, &right, multiplicity);

        let mut pos = 0;
        loop {
            if pos == groups.len() {
                return;
            }
            if chosen[pos] < groups[pos].1 {
                chosen[pos] += 1;
                break;
            }
            chosen[pos] = 0;
            pos += 1;
        }
    }
}
