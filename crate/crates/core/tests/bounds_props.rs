use num_bigint::BigUint;
use proptest::prelude::*;

use cwc_core::bounds::{binomial, decimal_string, gilbert_lb, graham_sloane_lb, johnson_ub, JohnsonTable};

#[test]
fn johnson_table_is_complement_symmetric_and_monotone() {
    let mut table = JohnsonTable::new();
    for n in 1..40u64 {
        for w in 0..=n {
            for d in (2..=2 * n.min(20)).step_by(2) {
                table.upper_bound(n, d, w).unwrap();
            }
        }
    }
    let entries: Vec<((u64, u64, u64), BigUint)> = table.entries().map(|(k, v)| (k, v.clone())).collect();
    assert!(entries.len() > 5000);
    for ((n, d, w), value) in &entries {
        let mirror = table.upper_bound(*n, *d, n - w).unwrap().ceil();
        assert_eq!(&mirror, value, "A({n},{d},{w}) vs A({n},{d},{})", n - w);
    }
    for n in 2..40u64 {
        for w in 1..n {
            for d in (2..=2 * n.min(20) - 2).step_by(2) {
                let here = table.upper_bound(n, d, w).unwrap().ceil();
                let wider = table.upper_bound(n, d + 2, w).unwrap().ceil();
                assert!(wider <= here, "non-increasing in d at ({n},{d},{w})");
                let longer = table.upper_bound(n + 1, d, w).unwrap().ceil();
                assert!(longer >= here, "non-decreasing in n at ({n},{d},{w})");
            }
        }
    }
}

#[test]
fn gilbert_never_exceeds_johnson() {
    for n in 2..36u64 {
        for w in 1..n {
            for d in (2..=2 * w.min(n - w)).step_by(2) {
                let g = gilbert_lb(n, d, w).unwrap().ceil();
                let j = johnson_ub(n, d, w).unwrap().ceil();
                assert!(g <= j, "A({n},{d},{w}): gilbert {g} > johnson {j}");
            }
        }
    }
}

#[test]
fn published_gilbert_values() {
    let rows = [
        ((88, 10, 8), "556.99"),
        ((72, 10, 8), "255.39"),
        ((88, 14, 8), "6.51"),
        ((99, 16, 9), "5.29"),
        ((110, 18, 10), "4.44"),
        ((80, 16, 10), "9.43"),
        ((72, 14, 9), "12.76"),
        ((63, 14, 9), "9.07"),
        ((104, 16, 13), "810.42"),
        ((96, 14, 12), "1557.72"),
    ];
    for ((n, d, w), expected) in rows {
        assert_eq!(gilbert_lb(n, d, w).unwrap().decimal(2), expected, "A({n},{d},{w})");
    }
}

/// `C(n,w) / q^(d/2-1)` evaluated with plain integer arithmetic on u128.
fn graham_sloane_oracle(n: u64, d: u64, w: u64, q: u64) -> f64 {
    let mut c: u128 = 1;
    for i in 0..w as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    c as f64 / (q as f64).powi(d as i32 / 2 - 1)
}

#[test]
fn graham_sloane_uses_least_prime_power_at_least_n() {
    let gs = graham_sloane_lb(88, 10, 8).unwrap();
    assert_eq!(gs.exact_string(), "64276915527/62742241");
    assert!((gs.to_f64() - graham_sloane_oracle(88, 10, 8, 89)).abs() < 1e-9);
    // the published 1071.8 is what q = n = 88 would give
    assert!((graham_sloane_oracle(88, 10, 8, 88) - 1071.8).abs() < 0.05);
    assert!((graham_sloane_oracle(72, 10, 8, 72) - 445.4).abs() < 0.05);
    let gs72 = graham_sloane_lb(72, 10, 8).unwrap();
    assert!((gs72.to_f64() - graham_sloane_oracle(72, 10, 8, 73)).abs() < 1e-9);
}

#[test]
fn binomial_and_decimal_display() {
    assert_eq!(binomial(88, 8), BigUint::from(64_276_915_527u64));
    assert_eq!(binomial(10, 0), BigUint::from(1u32));
    assert_eq!(binomial(3, 5), BigUint::from(0u32));
    let half = num_rational::BigRational::new(1.into(), 8.into());
    assert_eq!(decimal_string(&half, 2), "0.13");
}

#[test]
fn known_johnson_values() {
    for ((n, d, w), v) in [
        ((64, 10, 8), 8928u64),
        ((64, 12, 8), 720),
        ((49, 10, 7), 504),
        ((63, 10, 7), 1116),
        ((81, 16, 9), 90),
        ((88, 10, 8), 33077),
    ] {
        assert_eq!(johnson_ub(n, d, w).unwrap().ceil(), BigUint::from(v), "A({n},{d},{w})");
    }
}

proptest! {
    #[test]
    fn johnson_dominates_gilbert_and_is_symmetric(n in 2u64..60, w_frac in 0.0f64..1.0, half_d in 1u64..12) {
        let w = 1 + ((n - 1) as f64 * w_frac) as u64;
        let d = 2 * half_d;
        let j = johnson_ub(n, d, w).unwrap().ceil();
        prop_assert_eq!(&j, &johnson_ub(n, d, n - w).unwrap().ceil());
        if d <= 2 * w.min(n - w) {
            prop_assert!(gilbert_lb(n, d, w).unwrap().ceil() <= j);
        }
    }

    #[test]
    fn odd_distance_is_rounded_up(n in 4u64..40, w in 2u64..4, half_d in 1u64..3) {
        let odd = johnson_ub(n, 2 * half_d - 1, w).unwrap();
        let even = johnson_ub(n, 2 * half_d, w).unwrap();
        prop_assert_eq!(odd.ceil(), even.ceil());
    }
}
