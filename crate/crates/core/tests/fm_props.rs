//! Fourier–Motzkin projection against pointwise feasibility checks.

use coop_ic::bounds::{build_two_round, two_round_by_elimination, two_round_split_system, StrategyOrder};
use coop_ic::fm::{FmError, IneqSystem};
use coop_ic::harness::{sample_channel, SweepRegime, DEFAULT_DRAW_CAP};
use coop_ic::region::contains;
use proptest::prelude::*;

/// Row `a1 R1 + a2 R2 + c u <= b`.
type Row = (f64, f64, f64, f64);

/// Whether some `u >= 0` satisfies every row at `(r1, r2)`, with all rows
/// loosened (`slack > 0`) or tightened (`slack < 0`) by `slack`.
fn feasible(rows: &[Row], r1: f64, r2: f64, slack: f64) -> bool {
    if r1 < 0.0 || r2 < 0.0 {
        return false;
    }
    let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
    for &(a1, a2, c, b) in rows {
        let rest = b + slack - a1 * r1 - a2 * r2;
        if c > 0.0 {
            hi = hi.min(rest / c);
        } else if c < 0.0 {
            lo = lo.max(rest / c);
        } else if rest < 0.0 {
            return false;
        }
    }
    lo <= hi
}

fn system(rows: &[Row]) -> IneqSystem {
    let mut s = IneqSystem::nonnegative(&["R1", "R2", "u"]).unwrap();
    for &(a1, a2, c, b) in rows {
        s.add(&[("R1", a1), ("R2", a2), ("u", c)], b).unwrap();
    }
    s
}

fn arb_rows() -> impl Strategy<Value = (Vec<Row>, f64, f64)> {
    let row = (0.0..2.0f64, 0.0..2.0f64, -2.0..2.0f64, 0.0..20.0f64);
    (prop::collection::vec(row, 1..7), 1.0..15.0f64, 1.0..15.0f64).prop_map(|(mut rows, c1, c2)| {
        rows.push((1.0, 0.0, 0.0, c1));
        rows.push((0.0, 1.0, 0.0, c2));
        (rows, c1, c2)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn projection_matches_pointwise_feasibility((rows, c1, c2) in arb_rows(), pts in prop::collection::vec((0.0..1.1f64, 0.0..1.1f64), 64)) {
        let region = system(&rows).eliminate("u").unwrap().to_region().unwrap();
        for (x, y) in pts {
            let (r1, r2) = (x * c1, y * c2);
            let inside = feasible(&rows, r1, r2, -1e-6);
            let outside = !feasible(&rows, r1, r2, 1e-6);
            if inside {
                prop_assert!(region.contains_point([r1, r2], 1e-6), "({r1}, {r2}) should be inside");
            }
            if outside {
                prop_assert!(!region.contains_point([r1, r2], 1e-9), "({r1}, {r2}) should be outside");
            }
        }
    }

    #[test]
    fn projected_vertices_are_feasible((rows, _, _) in arb_rows()) {
        let region = system(&rows).eliminate("u").unwrap().to_region().unwrap();
        for v in region.vertices() {
            prop_assert!(feasible(&rows, v[0].max(0.0), v[1].max(0.0), 1e-6));
        }
    }
}

#[test]
fn elimination_order_does_not_matter() {
    for idx in 0..200 {
        let regime = if idx % 2 == 0 {
            SweepRegime::Weak
        } else {
            SweepRegime::Mixed
        };
        let (mut p, _) = sample_channel(31, idx, regime, DEFAULT_DRAW_CAP).unwrap();
        if p.classify() == coop_ic::Regime::Mixed21 {
            p = p.swapped();
        }
        let s = two_round_split_system(&p).unwrap();
        let a = s.eliminate_all(&["R1c", "R2c"]).unwrap().to_region().unwrap();
        let b = s.eliminate_all(&["R2c", "R1c"]).unwrap().to_region().unwrap();
        assert!(a.equals(&b, 1e-9), "sample {idx}");
        let direct = build_two_round(&p, StrategyOrder::TwoRound212).unwrap();
        let projected = two_round_by_elimination(&p).unwrap();
        assert!(contains(&direct, &projected, 1e-6).holds && contains(&projected, &direct, 1e-6).holds);
    }
}

#[test]
fn infeasible_and_non_planar_systems_are_reported() {
    let mut s = IneqSystem::nonnegative(&["R1", "R2", "u"]).unwrap();
    s.add(&[("u", -1.0)], -5.0).unwrap();
    s.add(&[("u", 1.0)], 2.0).unwrap();
    s.add(&[("R1", 1.0)], 1.0).unwrap();
    s.add(&[("R2", 1.0)], 1.0).unwrap();
    let projected = s.eliminate("u").unwrap();
    assert!(matches!(projected.to_region(), Err(FmError::Infeasible(_))));
    assert!(matches!(s.to_region(), Err(FmError::NotPlanar(_))));
    assert!(matches!(s.eliminate("w"), Err(FmError::UnknownVariable(_))));
}

#[test]
fn textbook_projection() {
    // R1 <= u, u <= 3, R2 + u <= 5  ->  R1 <= 3, R2 <= 5, R1 + R2 <= 5
    let mut s = IneqSystem::nonnegative(&["R1", "R2", "u"]).unwrap();
    s.add(&[("R1", 1.0), ("u", -1.0)], 0.0).unwrap();
    s.add(&[("u", 1.0)], 3.0).unwrap();
    s.add(&[("R2", 1.0), ("u", 1.0)], 5.0).unwrap();
    let r = s.eliminate("u").unwrap().to_region().unwrap();
    let want = coop_ic::RateRegion::from_vertices(&[[0.0, 5.0], [3.0, 2.0], [3.0, 0.0]]).unwrap();
    assert!(r.equals(&want, 1e-12));
}
