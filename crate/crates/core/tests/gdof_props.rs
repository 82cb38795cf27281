//! Generalized degrees of freedom: closed form and high-SNR limit.

use std::f64::consts::FRAC_PI_2;

use coop_ic::gdof::{d, snr_db_grid, verify_limit, GdofError, GdofQuery};
use proptest::prelude::*;

fn q(a: f64, k: f64) -> GdofQuery {
    GdofQuery::new(a, k).unwrap()
}

#[test]
fn w_curve_without_cooperation() {
    for (a, want) in [
        (0.0, 1.0),
        (0.5, 0.5),
        (2.0 / 3.0, 2.0 / 3.0),
        (1.0, 0.5),
        (1.5, 0.75),
        (2.0, 1.0),
        (3.0, 1.0),
    ] {
        assert!((d(q(a, 0.0)) - want).abs() < 1e-15, "alpha {a}");
    }
}

#[test]
fn reference_spot_values() {
    assert_eq!(d(q(0.5, 0.25)), 0.75);
    assert!((d(q(2.0 / 3.0, 1.0 / 3.0)) - 5.0 / 6.0).abs() <= f64::EPSILON);
}

#[test]
fn large_cooperation_saturates_below_one() {
    for i in 0..=20 {
        let a = i as f64 / 20.0;
        assert_eq!(d(q(a, 10.0)), 1.0, "alpha {a}");
    }
}

#[test]
fn limit_matches_formula_at_several_phases() {
    let grid = [300.0];
    for theta in [0.3, 1.0, FRAC_PI_2, 2.5, 4.0] {
        for a in [0.25, 0.5, 0.75, 1.0, 1.5] {
            for k in [0.0, 0.25, 0.5] {
                let r = verify_limit(q(a, k), &grid, theta).unwrap();
                assert!(
                    r.terminal_deviation() <= 0.02,
                    "theta {theta} alpha {a} kappa {k}: {}",
                    r.terminal_deviation()
                );
            }
        }
    }
}

#[test]
fn deviation_shrinks_along_the_grid() {
    let r = verify_limit(q(0.75, 0.25), &snr_db_grid(50.0, 400.0, 8), FRAC_PI_2).unwrap();
    let devs: Vec<f64> = r.points.iter().map(|p| p.deviation).collect();
    assert!(devs.last().unwrap() < devs.first().unwrap());
    assert!(*devs.last().unwrap() < 0.01);
}

#[test]
fn zero_phase_is_excluded() {
    assert_eq!(verify_limit(q(0.5, 0.0), &[100.0], 0.0), Err(GdofError::ExcludedPhase));
    assert_eq!(
        verify_limit(q(0.5, 0.0), &[100.0], std::f64::consts::TAU),
        Err(GdofError::ExcludedPhase)
    );
}

proptest! {
    #[test]
    fn nondecreasing_in_kappa(a in 0.0..4.0f64, k in 0.0..3.0f64, dk in 0.0..1.0f64) {
        prop_assert!(d(q(a, k + dk)) >= d(q(a, k)) - 1e-15);
    }

    #[test]
    fn lipschitz_in_alpha(a in 0.0..4.0f64, k in 0.0..3.0f64, da in 0.0..0.1f64) {
        prop_assert!((d(q(a + da, k)) - d(q(a, k))).abs() <= da + 1e-12);
    }

    #[test]
    fn bounded_by_cooperation_free_plus_kappa(a in 0.0..4.0f64, k in 0.0..3.0f64) {
        let v = d(q(a, k));
        prop_assert!(v >= d(q(a, 0.0)) - 1e-15);
        prop_assert!(v <= d(q(a, 0.0)) + k + 1e-15);
        prop_assert!(v <= a.max(1.0) + 1e-15);
    }
}
