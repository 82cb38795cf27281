//! Polytope operations against brute-force vertex enumeration.

use coop_ic::region::{contains, conv_union, HalfSpace, Point, RateRegion, RegionJson};
use proptest::prelude::*;

const TOL: f64 = 1e-7;

/// Every pairwise intersection of boundary lines (including the axes) that
/// satisfies all rows.
fn brute_force_vertices(hs: &[HalfSpace]) -> Vec<Point> {
    let mut lines: Vec<(f64, f64, f64)> = hs.iter().map(|h| (h.a1, h.a2, h.b)).collect();
    lines.push((1.0, 0.0, 0.0));
    lines.push((0.0, 1.0, 0.0));
    let feasible = |p: Point| {
        p[0] >= -TOL
            && p[1] >= -TOL
            && hs
                .iter()
                .all(|h| h.a1 * p[0] + h.a2 * p[1] <= h.b + TOL * (1.0 + h.b.abs()))
    };
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b, c) = lines[i];
            let (d, e, f) = lines[j];
            let det = a * e - b * d;
            if det.abs() < 1e-12 {
                continue;
            }
            let p = [(c * e - b * f) / det, (a * f - c * d) / det];
            if feasible(p) {
                out.push(p);
            }
        }
    }
    out
}

fn brute_support(points: &[Point], mu: (f64, f64)) -> f64 {
    points
        .iter()
        .map(|p| mu.0 * p[0] + mu.1 * p[1])
        .fold(f64::NEG_INFINITY, f64::max)
}

fn arb_halfspace() -> impl Strategy<Value = HalfSpace> {
    prop_oneof![
        (0.0..20.0f64).prop_map(|b| HalfSpace::r1(b).unwrap()),
        (0.0..20.0f64).prop_map(|b| HalfSpace::r2(b).unwrap()),
        (0.0..30.0f64).prop_map(|b| HalfSpace::sum(b).unwrap()),
        (0.0..40.0f64).prop_map(|b| HalfSpace::new(2.0, 1.0, b).unwrap()),
        (0.0..40.0f64).prop_map(|b| HalfSpace::new(1.0, 2.0, b).unwrap()),
        (0.01..3.0f64, 0.01..3.0f64, 0.0..30.0f64).prop_map(|(a1, a2, b)| HalfSpace::new(a1, a2, b).unwrap()),
    ]
}

fn arb_region() -> impl Strategy<Value = RateRegion> {
    (0.0..20.0f64, 0.0..20.0f64, prop::collection::vec(arb_halfspace(), 0..8)).prop_map(|(c1, c2, mut hs)| {
        hs.push(HalfSpace::r1(c1).unwrap());
        hs.push(HalfSpace::r2(c2).unwrap());
        RateRegion::new(hs).unwrap()
    })
}

fn arb_direction() -> impl Strategy<Value = (f64, f64)> {
    (0.0..1.0f64, 0.0..1.0f64).prop_filter("nonzero", |(a, b)| a + b > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn support_matches_brute_force(r in arb_region(), mu in arb_direction()) {
        let brute = brute_force_vertices(r.halfspaces());
        let want = brute_support(&brute, mu);
        prop_assert!((r.support(mu.0, mu.1) - want).abs() <= 1e-6 * (1.0 + want.abs()));
    }

    #[test]
    fn vertices_are_feasible_and_ordered(r in arb_region()) {
        let v = r.vertices();
        prop_assert!(!v.is_empty());
        prop_assert!(v[0][0].abs() <= TOL);
        prop_assert!(v[v.len() - 1][1].abs() <= TOL);
        for w in v.windows(2) {
            prop_assert!(w[1][0] >= w[0][0] - TOL && w[1][1] <= w[0][1] + TOL);
        }
        for &p in v {
            prop_assert!(r.contains_point(p, 1e-9));
        }
    }

    #[test]
    fn inflation_is_minkowski_sum_with_square(r in arb_region(), g in 0.0..3.0f64, mu in arb_direction()) {
        let inflated = r.inflate(g);
        let want = r.support(mu.0, mu.1) + g * (mu.0 + mu.1);
        prop_assert!((inflated.support(mu.0, mu.1) - want).abs() <= 1e-6 * (1.0 + want.abs()));
        prop_assert!(contains(&inflated, &r, 1e-9).holds);
    }

    #[test]
    fn union_support_is_max_of_supports(a in arb_region(), b in arb_region(), mu in arb_direction()) {
        let u = conv_union(&a, &b);
        let want = a.support(mu.0, mu.1).max(b.support(mu.0, mu.1));
        prop_assert!((u.support(mu.0, mu.1) - want).abs() <= 1e-6 * (1.0 + want.abs()));
    }

    #[test]
    fn containment_is_reflexive_and_detects_growth(r in arb_region(), g in 0.01..2.0f64) {
        prop_assert!(contains(&r, &r, 1e-9).holds);
        let bigger = r.inflate(g);
        let c = contains(&r, &bigger, 1e-9);
        prop_assert!(!c.holds);
        let w = c.witness.unwrap();
        prop_assert!((w.excess - c.max_excess).abs() < 1e-15);
        prop_assert!(w.excess >= g * 0.99);
    }

    #[test]
    fn mirror_is_an_involution(r in arb_region()) {
        prop_assert!(r.mirrored().mirrored().equals(&r, 1e-9));
        prop_assert!((r.mirrored().max_r1() - r.max_r2()).abs() < 1e-9);
    }

    #[test]
    fn json_round_trip(r in arb_region()) {
        let text = serde_json::to_string(&r.to_json()).unwrap();
        let back: RegionJson = serde_json::from_str(&text).unwrap();
        prop_assert!(RateRegion::from_json(&back).unwrap().equals(&r, 1e-12));
        let only_vertices = RegionJson { halfspaces: vec![], vertices: Some(r.vertices().to_vec()) };
        prop_assert!(RateRegion::from_json(&only_vertices).unwrap().equals(&r, 1e-7));
    }

    #[test]
    fn point_cloud_hull_contains_points(points in prop::collection::vec((0.0..10.0f64, 0.0..10.0f64), 1..12)) {
        let pts: Vec<Point> = points.iter().map(|&(x, y)| [x, y]).collect();
        let r = RateRegion::from_point_cloud(&pts);
        for &p in &pts {
            prop_assert!(r.contains_point(p, 1e-9));
        }
        for &v in r.vertices() {
            // every vertex is dominated by a convex combination of inputs, so
            // its weighted sum never exceeds the best input's
            let mu = (0.37, 0.63);
            prop_assert!(mu.0 * v[0] + mu.1 * v[1] <= brute_support(&pts, mu) + 1e-9);
        }
    }
}
