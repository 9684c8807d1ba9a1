use std::f64::consts::PI;

use cotan::cotangent::{c0_naive, vasyunin_value};
use cotan::fast_eval::{c0_fast, naive_rounding_estimate, reciprocity_defect};
use cotan::numtheory::arith::{gcd, mod_inverse};
use cotan::nyman_beurling::{gram_coefficient, gram_entry};
use cotan::wilton::{g_series_rational, moments, MomentKind};
use cotan::ReducedFraction;
use proptest::prelude::*;

fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
    (3u64..200_000).prop_flat_map(|b| (1..b, Just(b))).prop_filter("coprime", |&(r, b)| gcd(r, b) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_agrees_with_naive((r, b) in coprime_pair()) {
        let x = ReducedFraction::coprime(r, b).unwrap();
        let f = c0_fast(x).unwrap();
        let n = c0_naive(x).unwrap().value;
        prop_assert!((f.value - n).abs() <= f.error_bound + naive_rounding_estimate(b));
    }

    #[test]
    fn c0_is_odd_and_vasyunin_inverts((r, b) in coprime_pair()) {
        let x = ReducedFraction::coprime(r, b).unwrap();
        let y = ReducedFraction::coprime(b - r, b).unwrap();
        prop_assert_eq!(c0_naive(x).unwrap().value, -c0_naive(y).unwrap().value);
        let inv = mod_inverse(r, b).unwrap();
        let v = vasyunin_value(inv, b);
        prop_assert!((v + c0_naive(x).unwrap().value).abs() < 1e-12 * b as f64);
    }

    #[test]
    fn gram_coefficient_symmetry(r in 1u64..300, b in 1u64..300, m in 1u64..5) {
        prop_assert_eq!(gram_coefficient(r, b).unwrap(), gram_coefficient(b, r).unwrap());
        prop_assert_eq!(gram_entry(m * r, m * b).unwrap(), gram_entry(r, b).unwrap());
    }
}

#[test]
fn g_at_rationals_is_a_scaled_cotangent_sum() {
    for (r, b) in [(1u64, 3u64), (2, 5), (3, 7), (5, 12)] {
        let g = g_series_rational(ReducedFraction::coprime(r, b).unwrap(), 4_000_000).unwrap();
        let rbar = mod_inverse(r, b).unwrap();
        let want = PI / b as f64 * c0_naive(ReducedFraction::coprime(rbar, b).unwrap()).unwrap().value;
        assert!((g.value - want).abs() <= g.error_bound, "{r}/{b}");
    }
    let third = g_series_rational(ReducedFraction::coprime(1, 3).unwrap(), 4_000_000).unwrap();
    assert!((third.value - PI / (9.0 * 3f64.sqrt())).abs() <= third.error_bound);
}

#[test]
fn reciprocity_defect_at_one_half() {
    let d = reciprocity_defect(ReducedFraction::coprime(1, 2).unwrap()).unwrap();
    assert!((d + 1.0 / PI).abs() < 1e-15);
}

#[test]
fn seeded_moments_repeat() {
    let a = moments(2, 50_000, 11).unwrap();
    let b = moments(2, 50_000, 11).unwrap();
    assert_eq!(a, b);
    let h1 = a.get(MomentKind::H, 1.0).unwrap();
    assert!((h1.estimate - 5.0 / 36.0).abs() < 5.0 * h1.stderr);
    assert_ne!(a, moments(2, 50_000, 12).unwrap());
}
