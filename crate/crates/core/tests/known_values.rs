//! Classical descendant integrals, checked through the public API in every
//! engine mode.

use psi_extrema::{Engine, EngineConfig, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

const TABLE: &[(u32, &[u32], i64, i64)] = &[
    (0, &[0, 0, 0], 1, 1),
    (0, &[1, 1, 1, 0, 0, 0], 6, 1),
    (0, &[2, 1, 0, 0, 0, 0], 3, 1),
    (1, &[1], 1, 24),
    (1, &[1, 1, 1, 1, 1], 1, 1),
    (1, &[2, 0], 1, 24),
    (2, &[4], 1, 1152),
    (2, &[3, 2], 29, 5760),
    (2, &[4, 1], 1, 384),
    (2, &[2, 2, 2], 7, 240),
    (3, &[7], 1, 82944),
    (3, &[6, 2], 77, 414720),
    (3, &[5, 3], 503, 1451520),
    (3, &[4, 4], 607, 1451520),
    (3, &[3, 3, 3], 583, 96768),
];

#[test]
fn tabulated_values() {
    let modes = [
        EngineConfig::default(),
        EngineConfig::recursion_only(),
        EngineConfig {
            string_dilaton: false,
            ..EngineConfig::default()
        },
    ];
    for config in modes {
        let engine = Engine::with_config(config);
        for &(g, e, num, den) in TABLE {
            assert_eq!(
                engine.descendant(g, e).unwrap(),
                q(num, den),
                "g={g} {e:?} {config:?}"
            );
        }
    }
}

#[test]
fn order_and_pivot_do_not_matter() {
    let engine = Engine::new();
    let e = [2, 0, 3, 1];
    let expected = engine.descendant(2, &[3, 2, 1, 0]).unwrap();
    assert_eq!(engine.descendant(2, &e).unwrap(), expected);
    for pivot in [0, 2, 3] {
        assert_eq!(engine.descendant_via_pivot(2, &e, pivot).unwrap(), expected);
    }
    // the recursion needs a positive exponent to expand
    assert!(engine.descendant_via_pivot(2, &e, 1).is_err());
}

#[test]
fn wrong_degree_vanishes() {
    let engine = Engine::new();
    assert_eq!(engine.descendant(0, &[1, 0, 0]).unwrap(), q(0, 1));
    assert_eq!(engine.descendant(2, &[5]).unwrap(), q(0, 1));
    assert!(engine.descendant(0, &[0, 0]).is_err());
}
