//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use psi_extrema::descendants::genus0_closed;
use psi_extrema::optimizer::{
    balance_iterate, check_hypotheses, concentrate_iterate, evaluate_space, slice_sequence,
    DescendantOracle, Expansion, Multinomial, ProductOracle,
};
use psi_extrema::verify::{
    dilaton_regime_check, range_passed, stable_pairs, verify_identities, RangeEntry, VerifyOptions,
};
use psi_extrema::{CompositionSpace, Engine, EngineConfig, ModuliIndex, Oracle, Rational};
use psi_extrema_cli::{verify_range_parallel, SharedStore};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u128 = 1_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn genus0_agreement() -> Outcome {
    let configs = [
        ("recursion only", EngineConfig::recursion_only()),
        (
            "string/dilaton + recursion",
            EngineConfig {
                genus0_closed_form: false,
                ..EngineConfig::default()
            },
        ),
    ];
    let mut checked = 0;
    for (label, config) in configs {
        let engine = Engine::with_config(config);
        for n in 3..=8 {
            let space = ModuliIndex::new(0, n).unwrap().space();
            for e in space.enumerate() {
                let found = engine.descendant(0, &e).map_err(|err| err.to_string())?;
                let expected = genus0_closed(&e).map_err(|err| err.to_string())?;
                if found != expected {
                    return Err(format!(
                        "{label}: {e} gives {found}, closed form {expected}"
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} vectors, n = 3..8, two engine modes"))
}

fn one_point_values() -> Outcome {
    let engines = [
        Engine::new(),
        Engine::with_config(EngineConfig::recursion_only()),
    ];
    for g in 1..=6u32 {
        let mut denominator = BigInt::one();
        for k in 1..=g {
            denominator *= BigInt::from(24) * BigInt::from(k);
        }
        let expected = Rational::new(BigInt::one(), denominator);
        for engine in &engines {
            let found = engine
                .descendant(g, &[3 * g - 2])
                .map_err(|e| e.to_string())?;
            if found != expected {
                return Err(format!("g = {g}: {found}, expected {expected}"));
            }
        }
    }
    Ok("g = 1..6".into())
}

fn extremal_theorem() -> Outcome {
    let engine = Engine::with_store(SharedStore::new(), EngineConfig::default());
    let entries = verify_range_parallel(&engine, 4, 7, &VerifyOptions::default());
    if !range_passed(&entries) {
        let bad: Vec<String> = entries
            .iter()
            .filter(|e| !e.passed())
            .map(|e| match e {
                RangeEntry::Verified(r) => format!(
                    "({}, {}): {}",
                    r.g,
                    r.n,
                    r.failure.as_ref().map_or(String::new(), |f| f.to_string())
                ),
                RangeEntry::Refused { index, error } => {
                    format!("({}, {}) refused: {error}", index.g(), index.n())
                }
            })
            .collect();
        return Err(bad.join("; "));
    }
    let plateaus = entries
        .iter()
        .filter(|e| matches!(e, RangeEntry::Verified(r) if r.plateau))
        .count();
    Ok(format!(
        "{} spaces with g <= 4, n <= 7 ({plateaus} with plateaus)",
        entries.len()
    ))
}

fn hypothesis_suite() -> Outcome {
    let engine = Engine::new();
    let mut spaces = 0;
    for idx in stable_pairs(3, 6) {
        let space = idx.space();
        for expansion in [Expansion::Cached, Expansion::Ordered] {
            let oracle = DescendantOracle::new(&engine, idx.g()).with_expansion(expansion);
            let report = check_hypotheses(&oracle, &space, BUDGET).map_err(|e| e.to_string())?;
            if !report.all_hold() {
                return Err(format!(
                    "({}, {}) {expansion:?}: {report:?}",
                    idx.g(),
                    idx.n()
                ));
            }
        }
        spaces += 1;
    }
    Ok(format!("S, LC, P on {spaces} spaces with g <= 3, n <= 6"))
}

fn identity_suite() -> Outcome {
    // Neither side may use the string or dilaton shortcuts.
    let engine = Engine::with_config(EngineConfig::recursion_only());
    let (mut string, mut dilaton) = (0, 0);
    for idx in stable_pairs(3, 5) {
        let size = idx.space().size().unwrap() as usize;
        let report =
            verify_identities(&engine, idx.g(), idx.n(), size, 0).map_err(|e| e.to_string())?;
        if !report.exhaustive || !report.all_hold() {
            return Err(format!("({}, {}): {report:?}", idx.g(), idx.n()));
        }
        string += report.string_checks;
        dilaton += report.dilaton_checks;
    }
    for n in 3..=6 {
        let check = dilaton_regime_check(&engine, 2, n).map_err(|e| e.to_string())?;
        if !check.holds() {
            return Err(format!(
                "g = 2, n = {n}: expected {}, found {}",
                check.expected, check.found
            ));
        }
    }
    Ok(format!(
        "{string} string and {dilaton} dilaton checks, reduction to <τ_2^3>_2 for n = 3..6"
    ))
}

/// Positive weights with non-increasing ratios, so the product is
/// symmetric, log-concave and positive.
fn random_product(rng: &mut ChaCha8Rng, d: u32) -> ProductOracle {
    let mut ratios: Vec<Rational> = (0..d)
        .map(|_| q(rng.random_range(1..=9), rng.random_range(1..=9)))
        .collect();
    ratios.sort_by(|a, b| b.cmp(a));
    let first = q(rng.random_range(1..=5), rng.random_range(1..=5));
    ProductOracle::from_ratios(q(1, 1), first, &ratios)
}

fn check_iterations<O: Oracle>(oracle: &O, space: &CompositionSpace) -> Result<usize, String> {
    let label = || format!("{} on E({}, {})", oracle.name(), space.n(), space.d());
    let values = evaluate_space(oracle, space, BUDGET).map_err(|e| e.to_string())?;
    if !values.hypotheses().all_hold() {
        return Err(format!("{}: hypotheses fail", label()));
    }
    let ex = values.extrema();
    for (start, _) in values.iter() {
        let up = balance_iterate(oracle, space, start).map_err(|e| e.to_string())?;
        let (top, top_value) = up.terminal();
        if !top.is_balanced() || *top_value != ex.max || !up.is_non_decreasing() {
            return Err(format!(
                "{}: balancing from {start} ends at {top} = {top_value}",
                label()
            ));
        }
        let down = concentrate_iterate(oracle, space, start).map_err(|e| e.to_string())?;
        let (bottom, bottom_value) = down.terminal();
        if !bottom.is_concentrated() || *bottom_value != ex.min || !down.is_non_increasing() {
            return Err(format!(
                "{}: concentrating from {start} ends at {bottom} = {bottom_value}",
                label()
            ));
        }
    }
    Ok(values.len())
}

fn optimizer_vs_brute_force() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11_ce55);
    let engine = Engine::new();
    let descendant_spaces: Vec<ModuliIndex> = stable_pairs(3, 6)
        .into_iter()
        .filter(|idx| idx.dimension() <= 8)
        .collect();
    let (mut products, mut multinomials, mut descendants, mut starts) = (0, 0, 0, 0);
    for _ in 0..200 {
        match rng.random_range(0..10) {
            0..=5 => {
                let space = CompositionSpace::new(rng.random_range(1..=6), rng.random_range(0..=8))
                    .map_err(|e| e.to_string())?;
                starts += check_iterations(&random_product(&mut rng, space.d()), &space)?;
                products += 1;
            }
            6 => {
                let space = CompositionSpace::new(rng.random_range(1..=6), rng.random_range(0..=8))
                    .map_err(|e| e.to_string())?;
                starts += check_iterations(&Multinomial, &space)?;
                multinomials += 1;
            }
            _ => {
                let idx = descendant_spaces[rng.random_range(0..descendant_spaces.len())];
                let oracle = DescendantOracle::new(&engine, idx.g());
                starts += check_iterations(&oracle, &idx.space())?;
                descendants += 1;
            }
        }
    }
    Ok(format!(
        "{products} product, {multinomials} multinomial, {descendants} descendant oracles; {starts} starts"
    ))
}

fn slice_structure() -> Outcome {
    let engine = Engine::new();
    let mut sequences = 0;
    for idx in stable_pairs(2, 5) {
        let space = idx.space();
        let oracle = DescendantOracle::new(&engine, idx.g()).with_expansion(Expansion::Ordered);
        for e in space.enumerate() {
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    let s = slice_sequence(&oracle, &space, &e, i, j).map_err(|e| e.to_string())?;
                    let log_concave = s.is_log_concave().map_err(|e| e.to_string())?;
                    if !s.is_palindromic() || !log_concave || !s.is_unimodal_centered() {
                        return Err(format!(
                            "g = {}: slice of {e} on ({}, {}) is {:?}",
                            idx.g(),
                            i + 1,
                            j + 1,
                            s.values()
                        ));
                    }
                    sequences += 1;
                }
            }
        }
    }
    Ok(format!("{sequences} slice sequences, g <= 2, n <= 5"))
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_psi-extrema"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn cache_round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let original = dir.path().join("original.txt");
    let exported = dir.path().join("exported.txt");
    let fresh = dir.path().join("fresh.txt");
    let tampered = dir.path().join("tampered.txt");

    let status = |out: &std::process::Output| out.status.code().unwrap_or(-1);
    let run = |args: &[&str]| -> Result<std::process::Output, String> {
        let out = cli(args);
        if status(&out) == 0 {
            Ok(out)
        } else {
            Err(format!(
                "{args:?} exited {}: {}",
                status(&out),
                String::from_utf8_lossy(&out.stderr)
            ))
        }
    };

    run(&[
        "--cache",
        path(&original),
        "verify",
        "--gmax",
        "2",
        "--nmax",
        "5",
    ])?;
    run(&["--cache", path(&original), "compute", "--g", "2", "4"])?;
    run(&[
        "--cache",
        path(&original),
        "cache",
        "export",
        path(&exported),
    ])?;
    let original_text = fs::read_to_string(&original).map_err(|e| e.to_string())?;
    let exported_text = fs::read_to_string(&exported).map_err(|e| e.to_string())?;
    if original_text != exported_text {
        return Err("export differs from the saved cache".into());
    }
    if !exported_text.lines().any(|l| l == "2|4|1/1152") {
        return Err("exported cache lacks 2|4|1/1152".into());
    }

    run(&["--cache", path(&fresh), "cache", "import", path(&exported)])?;
    let fresh_text = fs::read_to_string(&fresh).map_err(|e| e.to_string())?;
    if fresh_text != exported_text {
        return Err("import into a fresh cache is not bit-exact".into());
    }
    let out = run(&[
        "--cache",
        path(&fresh),
        "--stats",
        "compute",
        "--g",
        "2",
        "4",
    ])?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    if out.stdout != b"1/1152\n" || !stderr.contains(" 0 misses") {
        return Err(format!("lookup after import: {stderr}"));
    }

    fs::write(&tampered, "2|4|1/1153\n").map_err(|e| e.to_string())?;
    let out = cli(&[
        "--cache",
        path(&original),
        "cache",
        "import",
        path(&tampered),
    ]);
    if status(&out) != 1 {
        return Err(format!("tampered import exited {}", status(&out)));
    }
    if fs::read_to_string(&original).map_err(|e| e.to_string())? != original_text {
        return Err("tampered import modified the cache".into());
    }
    Ok(format!(
        "{} records round-tripped; tampered record rejected with exit 1",
        exported_text.lines().count()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "genus-0 recursion agrees with the closed form",
            genus0_agreement,
        ),
        ("one-point values 1/(24^g g!)", one_point_values),
        ("extremal theorem on g <= 4, n <= 7", extremal_theorem),
        ("symmetry, log-concavity, positivity", hypothesis_suite),
        ("string, dilaton and reduction identities", identity_suite),
        (
            "move iterations reach the brute-force extrema",
            optimizer_vs_brute_force,
        ),
        (
            "slice sequences palindromic, log-concave, unimodal",
            slice_structure,
        ),
        ("cache round trip and tamper rejection", cache_round_trip),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{secs:.1}s]", k + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {}. {name}: {reason} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
