//! Exhaustive verification of the extremal theorem for descendant integrals on
//! individual `(g, n)`, plus exact checks of the string, dilaton and one-point
//! identities.
//!
//! Identity checks evaluate the left-hand side through one recursion step on
//! the vector as given ([`Engine::descendant_via_pivot`]) and the right-hand
//! side through the cache, so they compare two different evaluation routes.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::compositions::{CompositionSpace, ExponentVector};
use crate::descendants::{
    dilaton_apply, factorial, is_stable, one_point_value, string_apply, DescendantStore, Engine,
    ModuliIndex, Rational,
};
use crate::error::{Error, Result};
use crate::optimizer::{
    balance_iterate, concentrate_iterate, evaluate_space, DescendantOracle, HypothesisReport,
};

pub const DEFAULT_BUDGET: u128 = 1_000_000;
pub const DEFAULT_IDENTITY_SAMPLES: usize = 2_000;
pub const DEFAULT_SEED: u64 = 0x5eed_d1a7_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest `|E(n, d)|` evaluated exhaustively.
    pub budget: u128,
    /// Vectors checked by the identity suite; exhaustive when the space is
    /// no larger than this.
    pub identity_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            identity_samples: DEFAULT_IDENTITY_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

/// A permutation orbit, named by its sorted representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    pub key: ExponentVector,
    pub orbit_size: u128,
}

impl OrbitSummary {
    pub fn new(key: ExponentVector) -> Self {
        let orbit_size = orbit_size(&key);
        Self { key, orbit_size }
    }
}

/// `n! / Π m_v!` over the multiplicities `m_v` of the distinct entries.
pub fn orbit_size(e: &[u32]) -> u128 {
    let mut counts: BTreeMap<u32, u128> = BTreeMap::new();
    for &x in e {
        *counts.entry(x).or_default() += 1;
    }
    let mut remaining = e.len() as u128;
    let mut size = 1u128;
    for &m in counts.values() {
        size *= crate::compositions::binomial(remaining, m).expect("orbit size overflow");
        remaining -= m;
    }
    size
}

/// Distinct orbits among `vectors`, largest key first.
pub fn summarize(vectors: &[ExponentVector]) -> Vec<OrbitSummary> {
    let mut keys: Vec<ExponentVector> = vectors.iter().map(|e| e.canonical_key()).collect();
    keys.sort_by(|a, b| b.cmp(a));
    keys.dedup();
    keys.into_iter().map(OrbitSummary::new).collect()
}

/// A failed string or dilaton check at `index` (0-based) of `vector`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub vector: ExponentVector,
    pub index: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueCheck {
    pub expected: Rational,
    pub found: Rational,
}

impl ValueCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.found
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub g: u32,
    pub n: usize,
    pub seed: u64,
    pub exhaustive: bool,
    pub vectors_checked: usize,
    pub string_checks: usize,
    pub dilaton_checks: usize,
    pub string_failure: Option<IdentityFailure>,
    pub dilaton_failure: Option<IdentityFailure>,
    /// `<τ_{3g-2}>_g = 1/(24^g g!)`, when `n = 1`.
    pub one_point: Option<ValueCheck>,
    /// `<τ_1^{n-(3g-3)} τ_2^{3g-3}>_g = (2g-3+n)!/(5g-6)! <τ_2^{3g-3}>_g`,
    /// when `g >= 2` and `n >= 3g - 3`.
    pub dilaton_regime: Option<ValueCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.string_failure.is_none()
            && self.dilaton_failure.is_none()
            && self.one_point.as_ref().is_none_or(ValueCheck::holds)
            && self.dilaton_regime.as_ref().is_none_or(ValueCheck::holds)
    }
}

/// The value through one recursion step on the largest entry as given.
fn via_pivot<S: DescendantStore>(engine: &Engine<S>, g: u32, e: &[u32]) -> Result<Rational> {
    let max = e.iter().copied().max().unwrap_or(0);
    if max == 0 {
        return engine.descendant(g, e);
    }
    let pivot = e.iter().position(|&x| x == max).expect("nonempty");
    engine.descendant_via_pivot(g, e, pivot)
}

/// Uniform sample of `count` vectors from `E(n, d)` by stars and bars.
fn sample_space(space: &CompositionSpace, count: usize, seed: u64) -> Vec<ExponentVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = space.n();
    let slots = space.d() as usize + n - 1;
    (0..count)
        .map(|_| {
            let mut bars = rand::seq::index::sample(&mut rng, slots, n - 1).into_vec();
            bars.sort_unstable();
            let mut entries = Vec::with_capacity(n);
            let mut prev = 0usize;
            for (k, &b) in bars.iter().enumerate() {
                // stars strictly between consecutive bars
                entries.push((b - prev - usize::from(k > 0)) as u32);
                prev = b;
            }
            let last = if bars.is_empty() {
                slots
            } else {
                slots - prev - 1
            };
            entries.push(last as u32);
            ExponentVector::new(entries).expect("n >= 1")
        })
        .collect()
}

pub fn verify_identities<S: DescendantStore>(
    engine: &Engine<S>,
    g: u32,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport> {
    let idx = ModuliIndex::new(g, n)?;
    let space = idx.space();
    let exhaustive = space.size().is_some_and(|s| s <= samples as u128);
    let vectors: Vec<ExponentVector> = if exhaustive {
        space.enumerate().collect()
    } else {
        sample_space(&space, samples, seed)
    };

    let mut report = IdentityReport {
        g,
        n,
        seed,
        exhaustive,
        vectors_checked: vectors.len(),
        string_checks: 0,
        dilaton_checks: 0,
        string_failure: None,
        dilaton_failure: None,
        one_point: None,
        dilaton_regime: None,
    };

    let reducible = is_stable(g, n - 1) && n > 1;
    for e in &vectors {
        if !reducible {
            break;
        }
        let lhs = via_pivot(engine, g, e)?;
        for index in 0..n {
            match e[index] {
                0 => {
                    report.string_checks += 1;
                    let mut rhs = Rational::zero();
                    for term in string_apply(g, e, index)? {
                        rhs += engine.descendant(g, &term)?;
                    }
                    if lhs != rhs && report.string_failure.is_none() {
                        report.string_failure = Some(IdentityFailure {
                            vector: e.clone(),
                            index,
                            lhs: lhs.clone(),
                            rhs,
                        });
                    }
                }
                1 => {
                    report.dilaton_checks += 1;
                    let (factor, reduced) = dilaton_apply(g, e, index)?;
                    let rhs = factor * engine.descendant(g, &reduced)?;
                    if lhs != rhs && report.dilaton_failure.is_none() {
                        report.dilaton_failure = Some(IdentityFailure {
                            vector: e.clone(),
                            index,
                            lhs: lhs.clone(),
                            rhs,
                        });
                    }
                }
                _ => {}
            }
        }
    }

    if n == 1 && g >= 1 {
        report.one_point = Some(ValueCheck {
            expected: one_point_value(g)?,
            found: via_pivot(engine, g, &[3 * g - 2])?,
        });
    }

    if g >= 2 && n >= 3 * g as usize - 3 {
        report.dilaton_regime = Some(dilaton_regime_check(engine, g, n)?);
    }

    Ok(report)
}

/// Both sides of the dilaton-regime identity for `g >= 2`, `n >= 3g - 3`:
/// `expected` is the factorial ratio times `<τ_2^{3g-3}>_g`.
pub fn dilaton_regime_check<S: DescendantStore>(
    engine: &Engine<S>,
    g: u32,
    n: usize,
) -> Result<ValueCheck> {
    let twos = 3 * g as usize - 3;
    let mut full = alloc::vec![1u32; n - twos];
    full.extend(core::iter::repeat_n(2, twos));
    let found = via_pivot(engine, g, &full)?;
    let base = engine.descendant(g, &alloc::vec![2u32; twos])?;
    let ratio = Rational::new(
        factorial(2 * u64::from(g) - 3 + n as u64),
        factorial(5 * u64::from(g) - 6),
    );
    Ok(ValueCheck {
        expected: ratio * base,
        found,
    })
}

/// First reason a report fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// No maximizer is balanced.
    UnbalancedMaximum {
        witness: ExponentVector,
    },
    /// The concentrated orbit is not among the minimizers.
    ConcentratedNotMinimal {
        value: Rational,
    },
    /// The minimum differs from `1/(24^g g!)`.
    MinimumValue {
        expected: Rational,
        found: Rational,
    },
    /// An iteration from the opposite extreme missed the brute-force value.
    Iteration {
        expected: Rational,
        found: Rational,
    },
    Hypotheses,
    Identities,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::UnbalancedMaximum { witness } => {
                write!(f, "maximum only on unbalanced vectors, e.g. {witness}")
            }
            Failure::ConcentratedNotMinimal { value } => {
                write!(f, "concentrated value {value} is not the minimum")
            }
            Failure::MinimumValue { expected, found } => {
                write!(f, "minimum {found}, expected {expected}")
            }
            Failure::Iteration { expected, found } => {
                write!(
                    f,
                    "iteration ended at {found}, brute force gives {expected}"
                )
            }
            Failure::Hypotheses => f.write_str("a hypothesis check failed"),
            Failure::Identities => f.write_str("an identity check failed"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub g: u32,
    pub n: usize,
    pub d: u32,
    pub space_size: usize,
    pub max: Rational,
    pub argmax: Vec<OrbitSummary>,
    pub min: Rational,
    pub argmin: Vec<OrbitSummary>,
    pub hypotheses: HypothesisReport,
    pub identities: IdentityReport,
    /// Some extremum is attained off the balanced (resp. concentrated) orbit.
    pub plateau: bool,
    pub failure: Option<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// `1/(24^g g!)`, and `1` in genus zero.
pub fn expected_minimum(g: u32) -> Rational {
    if g == 0 {
        Rational::one()
    } else {
        one_point_value(g).expect("g >= 1")
    }
}

pub fn verify_extremal<S: DescendantStore>(
    engine: &Engine<S>,
    g: u32,
    n: usize,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let idx = ModuliIndex::new(g, n)?;
    let space = idx.space();
    space.check_budget(options.budget)?;
    let oracle = DescendantOracle::new(engine, g);
    let values = evaluate_space(&oracle, &space, options.budget)?;
    let extrema = values.extrema();
    let hypotheses = values.hypotheses();
    let identities = verify_identities(engine, g, n, options.identity_samples, options.seed)?;

    let argmax = summarize(&extrema.argmax);
    let argmin = summarize(&extrema.argmin);
    let plateau = argmax.iter().any(|o| !o.key.is_balanced())
        || argmin.iter().any(|o| !o.key.is_concentrated());

    let concentrated = ExponentVector::concentrated(space);
    let balanced = space.balanced_representative();
    let up = balance_iterate(&oracle, &space, &concentrated)?;
    let down = concentrate_iterate(&oracle, &space, &balanced)?;
    let expected_min = expected_minimum(g);

    let failure = if !argmax.iter().any(|o| o.key.is_balanced()) {
        Some(Failure::UnbalancedMaximum {
            witness: argmax[0].key.clone(),
        })
    } else if !argmin.iter().any(|o| o.key.is_concentrated()) {
        Some(Failure::ConcentratedNotMinimal {
            value: values.value(&concentrated).clone(),
        })
    } else if extrema.min != expected_min {
        Some(Failure::MinimumValue {
            expected: expected_min,
            found: extrema.min.clone(),
        })
    } else if up.terminal().1 != extrema.max {
        Some(Failure::Iteration {
            expected: extrema.max.clone(),
            found: up.terminal().1.clone(),
        })
    } else if down.terminal().1 != extrema.min {
        Some(Failure::Iteration {
            expected: extrema.min.clone(),
            found: down.terminal().1.clone(),
        })
    } else if !hypotheses.all_hold() {
        Some(Failure::Hypotheses)
    } else if !identities.all_hold() {
        Some(Failure::Identities)
    } else {
        None
    };

    Ok(VerificationReport {
        g,
        n,
        d: idx.dimension(),
        space_size: values.len(),
        max: extrema.max,
        argmax,
        min: extrema.min,
        argmin,
        hypotheses,
        identities,
        plateau,
        failure,
    })
}

/// Stable `(g, n)` with `g <= g_max`, `1 <= n <= n_max`, ordered by `(g, n)`.
pub fn stable_pairs(g_max: u32, n_max: usize) -> Vec<ModuliIndex> {
    (0..=g_max)
        .flat_map(|g| (1..=n_max).filter_map(move |n| ModuliIndex::new(g, n).ok()))
        .collect()
}

/// Outcome for one `(g, n)` of a range run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RangeEntry {
    Verified(Box<VerificationReport>),
    /// Not attempted or aborted, e.g. over budget.
    Refused {
        index: ModuliIndex,
        error: Error,
    },
}

impl RangeEntry {
    pub fn index(&self) -> (u32, usize) {
        match self {
            RangeEntry::Verified(r) => (r.g, r.n),
            RangeEntry::Refused { index, .. } => (index.g(), index.n()),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, RangeEntry::Verified(r) if r.passed())
    }
}

pub fn verify_pair<S: DescendantStore>(
    engine: &Engine<S>,
    index: ModuliIndex,
    options: &VerifyOptions,
) -> RangeEntry {
    match verify_extremal(engine, index.g(), index.n(), options) {
        Ok(report) => RangeEntry::Verified(Box::new(report)),
        Err(error) => RangeEntry::Refused { index, error },
    }
}

/// Runs [`verify_extremal`] on every stable pair in range. Refusals are
/// recorded, not fatal; the range passes only if every entry verified and
/// passed.
pub fn verify_range<S: DescendantStore>(
    engine: &Engine<S>,
    g_max: u32,
    n_max: usize,
    options: &VerifyOptions,
) -> Vec<RangeEntry> {
    stable_pairs(g_max, n_max)
        .into_iter()
        .map(|idx| verify_pair(engine, idx, options))
        .collect()
}

pub fn range_passed(entries: &[RangeEntry]) -> bool {
    entries.iter().all(RangeEntry::passed)
}
