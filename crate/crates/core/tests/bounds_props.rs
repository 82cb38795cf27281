//! Structural properties of the inner and outer regions.

use coop_ic::bounds::{
    build_cmac, build_inner, build_one_round, build_outer, build_two_round, sym_one_round, sym_upper, BoundsError,
    StrategyOrder,
};
use coop_ic::channel::{ChannelParams, Regime};
use coop_ic::harness::{draw_channel, draw_symmetric, sample_channel, sample_rng, SweepRegime, DEFAULT_DRAW_CAP};
use coop_ic::region::{contains, RateRegion};
use proptest::prelude::*;

const TOL: f64 = 1e-6;

fn arb_channel() -> impl Strategy<Value = ChannelParams> {
    (
        (0.0..80.0f64, 0.0..80.0f64, 0.0..80.0f64, 0.0..80.0f64),
        0.0..std::f64::consts::TAU,
        (0.0..40.0f64, 0.0..40.0f64),
    )
        .prop_map(|((a, b, c, d), t, (c12, c21))| ChannelParams::from_db(a, b, c, d, t, c12, c21).unwrap())
}

fn same(a: &RateRegion, b: &RateRegion) -> bool {
    contains(a, b, TOL).holds && contains(b, a, TOL).holds
}

/// Largest `a·r` over the region for normal `(a1, a2)`.
fn support(r: &RateRegion, a1: f64, a2: f64) -> f64 {
    r.support(a1, a2)
}

/// Checks every inner row `a·r <= b`, except those listed in `skip`,
/// against `b >= support_outer(a) - c(a)`.
fn rows_within(
    inner: &RateRegion,
    outer: &RateRegion,
    skip: &[usize],
    gap: impl Fn(f64, f64) -> Option<f64>,
) -> Result<(), String> {
    for (idx, h) in inner.halfspaces().iter().enumerate() {
        if skip.contains(&idx) {
            continue;
        }
        let Some(c) = gap(h.a1, h.a2) else {
            return Err(format!("row {idx} has unexpected normal ({}, {})", h.a1, h.a2));
        };
        let s = support(outer, h.a1, h.a2);
        if h.b < s - c - TOL {
            return Err(format!(
                "row {idx} ({}, {}): b = {} but outer support {} - {}",
                h.a1, h.a2, h.b, s, c
            ));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn swapping_users_mirrors_regions(p in arb_channel()) {
        let q = p.swapped();
        prop_assert!(same(&build_outer(&q), &build_outer(&p).mirrored()));
        prop_assert!(same(&build_inner(&q), &build_inner(&p).mirrored()));
        let (c, cq) = (build_cmac(&p), build_cmac(&q));
        prop_assert!(same(&cq.inner, &c.inner.mirrored()));
        prop_assert!(same(&cq.outer, &c.outer.mirrored()));
    }

    #[test]
    fn inner_lies_inside_outer(p in arb_channel()) {
        prop_assert!(contains(&build_outer(&p), &build_inner(&p), TOL).holds);
        let c = build_cmac(&p);
        prop_assert!(contains(&c.outer, &c.inner, TOL).holds);
    }

    #[test]
    fn regions_grow_with_cooperation(p in arb_channel(), d12 in 0.0..5.0f64, d21 in 0.0..5.0f64) {
        let q = p.with_coop(p.cb12() + d12, p.cb21() + d21).unwrap();
        prop_assert!(contains(&build_outer(&q), &build_outer(&p), TOL).holds);
        prop_assert!(contains(&build_inner(&q), &build_inner(&p), TOL).holds);
        prop_assert!(contains(&build_one_round(&q), &build_one_round(&p), TOL).holds);
    }

    #[test]
    fn regions_are_downward_closed_polytopes(p in arb_channel()) {
        for r in [build_outer(&p), build_inner(&p), build_cmac(&p).outer] {
            prop_assert!(r.contains_point([0.0, 0.0], 0.0));
            for v in r.vertices() {
                prop_assert!(v[0] >= -TOL && v[1] >= -TOL);
                prop_assert!(r.contains_point([v[0] * 0.5, v[1]], TOL));
                prop_assert!(r.contains_point([v[0], v[1] * 0.5], TOL));
            }
        }
    }

    #[test]
    fn two_round_orders_follow_regime(p in arb_channel()) {
        let r212 = build_two_round(&p, StrategyOrder::TwoRound212);
        let r121 = build_two_round(&p, StrategyOrder::TwoRound121);
        match p.classify() {
            Regime::Weak => prop_assert!(r212.is_ok() && r121.is_ok()),
            Regime::Mixed12 => prop_assert!(r212.is_ok() && r121.is_err()),
            Regime::Mixed21 => prop_assert!(r212.is_err() && r121.is_ok()),
            Regime::Strong => prop_assert!(r212.is_err() && r121.is_err()),
        }
        let is_not_two_round = matches!(
            build_two_round(&p, StrategyOrder::OneRound),
            Err(BoundsError::NotTwoRound(_))
        );
        prop_assert!(is_not_two_round);
    }
}

#[test]
fn weak_rows_within_claimed_constants() {
    let lg = f64::log2;
    for idx in 0..3000 {
        let (p, _) = sample_channel(21, idx, SweepRegime::Weak, DEFAULT_DRAW_CAP).unwrap();
        let inner = build_two_round(&p, StrategyOrder::TwoRound212).unwrap();
        let outer = build_outer(&p);
        let gap = |a1: f64, a2: f64| match (a1 as u8, a2 as u8) {
            (1, 0) | (0, 1) => Some(2.0),
            (1, 1) => Some(lg(12.0)),
            (2, 1) => Some(lg(24.0)),
            (1, 2) => Some(lg(48.0)),
            _ => None,
        };
        // the 2R1 + R2 row with the quantized observation is excluded by the claim
        if let Err(e) = rows_within(&inner, &outer, &[11], gap) {
            panic!("sample {idx}: {e}");
        }
    }
}

#[test]
fn weak_union_within_claimed_constants() {
    let lg = f64::log2;
    for idx in 0..3000 {
        let (p, _) = sample_channel(22, idx, SweepRegime::Weak, DEFAULT_DRAW_CAP).unwrap();
        let inner = build_inner(&p);
        let outer = build_outer(&p);
        for (a1, a2, c) in [
            (1.0, 0.0, 2.0),
            (0.0, 1.0, 2.0),
            (1.0, 1.0, lg(12.0)),
            (2.0, 1.0, lg(48.0)),
            (1.0, 2.0, lg(48.0)),
        ] {
            let (si, so) = (support(&inner, a1, a2), support(&outer, a1, a2));
            assert!(
                si >= so - c - TOL,
                "sample {idx} direction ({a1}, {a2}): inner {si}, outer {so}"
            );
        }
    }
}

#[test]
fn mixed_rows_within_claimed_constants() {
    for idx in 0..3000 {
        let (mut p, _) = sample_channel(23, idx, SweepRegime::Mixed, DEFAULT_DRAW_CAP).unwrap();
        if p.classify() == Regime::Mixed21 {
            p = p.swapped();
        }
        let inner = build_two_round(&p, StrategyOrder::TwoRound212).unwrap();
        let outer = build_outer(&p);
        let gap = |a1: f64, a2: f64| match (a1 as u8, a2 as u8) {
            (1, 0) | (0, 1) => Some(1.0),
            (1, 1) | (1, 2) => Some(3.0),
            _ => None,
        };
        if let Err(e) = rows_within(&inner, &outer, &[], gap) {
            panic!("sample {idx}: {e}");
        }
    }
}

#[test]
fn strong_rows_within_claimed_constants() {
    for idx in 0..3000 {
        let (p, _) = sample_channel(24, idx, SweepRegime::Strong, DEFAULT_DRAW_CAP).unwrap();
        let inner = build_one_round(&p);
        let outer = build_outer(&p);
        let gap = |a1: f64, a2: f64| match (a1 as u8, a2 as u8) {
            (1, 0) | (0, 1) => Some(1.0),
            (1, 1) => Some(2.0),
            _ => None,
        };
        if let Err(e) = rows_within(&inner, &outer, &[], gap) {
            panic!("sample {idx}: {e}");
        }
    }
}

#[test]
fn symmetric_bounds_bracket_regions() {
    for idx in 0..2000 {
        let p = draw_symmetric(&mut sample_rng(25, idx), false);
        let upper = sym_upper(&p).unwrap();
        let lower = sym_one_round(&p).unwrap();
        assert!(lower <= upper + TOL, "sample {idx}: {lower} > {upper}");
        assert!(upper - lower <= 3.0 + TOL);
        assert!(build_outer(&p).max_symmetric() <= upper + TOL);
    }
}

#[test]
fn symmetric_strong_gap_is_one_bit() {
    for idx in 0..2000 {
        let p = draw_symmetric(&mut sample_rng(26, idx), true);
        assert!(p.snr1() <= p.inr1());
        let gap = sym_upper(&p).unwrap() - sym_one_round(&p).unwrap();
        assert!(gap <= 1.0 + TOL, "sample {idx}: gap {gap}");
    }
}

#[test]
fn symmetric_bounds_reject_asymmetric_channels() {
    let p = draw_channel(&mut sample_rng(27, 0));
    assert_eq!(sym_upper(&p), Err(BoundsError::NotSymmetric));
    assert_eq!(sym_one_round(&p), Err(BoundsError::NotSymmetric));
}

#[test]
fn corollary_example_value() {
    let p = ChannelParams::symmetric(100.0, 100.0, std::f64::consts::FRAC_PI_2, 2.0).unwrap();
    // min{log 101 + log(1 + 100/101), log(101 + 100/101) + 2, ...}
    let terms = coop_ic::bounds::sym_upper_terms(100.0, 100.0, 2.0, p.det_term());
    let lg = f64::log2;
    assert!((terms[0] - (lg(101.0) + lg(1.0 + 100.0 / 101.0))).abs() < 1e-12);
    assert!((terms[1] - (lg(101.0 + 100.0 / 101.0) + 2.0)).abs() < 1e-12);
    assert!((sym_upper(&p).unwrap() - terms.iter().cloned().fold(f64::INFINITY, f64::min)).abs() < 1e-15);
}
