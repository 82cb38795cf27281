//! Two-dimensional rate regions.
//!
//! A [`RateRegion`] is the set of `(R1, R2)` in the nonnegative quadrant
//! satisfying a list of halfspaces `a1 R1 + a2 R2 <= b` with nonnegative
//! coefficients and `b >= 0`. Such regions are downward closed, contain the
//! origin, and are bounded as soon as both axes are capped.
//!
//! Vertices are reported in boundary order from `(0, max R2)` to
//! `(max R1, 0)`, with `R1` non-decreasing and `R2` non-increasing, after
//! collapsing points closer than [`GEOM_TOL`].

use serde::{Deserialize, Serialize};

/// Default geometric tolerance, in bits.
pub const GEOM_TOL: f64 = 1e-9;

/// A rate pair `[R1, R2]`.
pub type Point = [f64; 2];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegionError {
    #[error("halfspace coefficients must be finite and non-negative, got ({a1}, {a2})")]
    NegativeCoefficient { a1: f64, a2: f64 },
    #[error("halfspace has both coefficients zero")]
    ZeroNormal,
    #[error("halfspace bound must be finite and non-negative, got {0}")]
    InvalidBound(f64),
    #[error("region is unbounded along R{axis}")]
    Unbounded { axis: u8 },
    #[error("vertex chain must start on the R2 axis, end on the R1 axis, and be monotone")]
    InvalidChain,
    #[error("region JSON must contain halfspaces or vertices")]
    EmptyJson,
}

/// `a1 R1 + a2 R2 <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub a1: f64,
    pub a2: f64,
    pub b: f64,
}

impl HalfSpace {
    /// Validated constructor. A bound within [`GEOM_TOL`] below zero is
    /// rounded to zero.
    pub fn new(a1: f64, a2: f64, b: f64) -> Result<Self, RegionError> {
        if !(a1.is_finite() && a2.is_finite()) || a1 < 0.0 || a2 < 0.0 {
            return Err(RegionError::NegativeCoefficient { a1, a2 });
        }
        if a1 == 0.0 && a2 == 0.0 {
            return Err(RegionError::ZeroNormal);
        }
        if !b.is_finite() || b < -GEOM_TOL {
            return Err(RegionError::InvalidBound(b));
        }
        Ok(Self { a1, a2, b: b.max(0.0) })
    }

    pub fn r1(b: f64) -> Result<Self, RegionError> {
        Self::new(1.0, 0.0, b)
    }

    pub fn r2(b: f64) -> Result<Self, RegionError> {
        Self::new(0.0, 1.0, b)
    }

    pub fn sum(b: f64) -> Result<Self, RegionError> {
        Self::new(1.0, 1.0, b)
    }

    pub fn dot(&self, p: Point) -> f64 {
        self.a1 * p[0] + self.a2 * p[1]
    }

    /// Signed violation at `p`, scaled so that the larger coefficient is 1.
    pub fn excess(&self, p: Point) -> f64 {
        (self.dot(p) - self.b) / self.a1.max(self.a2)
    }

    /// Same halfspace scaled so that `max(a1, a2) = 1`.
    pub fn normalized(&self) -> Self {
        let s = self.a1.max(self.a2);
        Self {
            a1: self.a1 / s,
            a2: self.a2 / s,
            b: self.b / s,
        }
    }

    pub fn mirrored(&self) -> Self {
        Self {
            a1: self.a2,
            a2: self.a1,
            b: self.b,
        }
    }
}

/// Worst violation found by [`contains`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub vertex: Point,
    pub halfspace: HalfSpace,
    pub excess: f64,
}

/// Result of a containment test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Containment {
    pub holds: bool,
    /// Largest normalized excess over all (vertex, halfspace) pairs; zero or
    /// negative when every vertex is strictly inside.
    pub max_excess: f64,
    /// The pair attaining `max_excess` when containment fails.
    pub witness: Option<Violation>,
}

/// Convex polytope in the nonnegative quadrant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateRegion {
    halfspaces: Vec<HalfSpace>,
    #[serde(skip)]
    vertices: Vec<Point>,
}

struct Line {
    slope: f64,
    intercept: f64,
}

impl RateRegion {
    /// Builds a region from halfspaces; both rates must be capped.
    pub fn new(halfspaces: Vec<HalfSpace>) -> Result<Self, RegionError> {
        for h in &halfspaces {
            HalfSpace::new(h.a1, h.a2, h.b)?;
        }
        if !halfspaces.iter().any(|h| h.a1 > 0.0) {
            return Err(RegionError::Unbounded { axis: 1 });
        }
        if !halfspaces.iter().any(|h| h.a2 > 0.0) {
            return Err(RegionError::Unbounded { axis: 2 });
        }
        let halfspaces: Vec<_> = halfspaces
            .into_iter()
            .map(|h| HalfSpace { b: h.b.max(0.0), ..h })
            .collect();
        let vertices = compute_vertices(&halfspaces);
        Ok(Self { halfspaces, vertices })
    }

    /// Region whose boundary passes through the given chain of points.
    /// The chain must run from the `R2` axis to the `R1` axis with `R1`
    /// non-decreasing and `R2` non-increasing; it is convexified first.
    pub fn from_vertices(points: &[Point]) -> Result<Self, RegionError> {
        if points.is_empty() {
            return Err(RegionError::InvalidChain);
        }
        for w in points.windows(2) {
            if w[1][0] < w[0][0] - GEOM_TOL || w[1][1] > w[0][1] + GEOM_TOL {
                return Err(RegionError::InvalidChain);
            }
        }
        let first = points[0];
        let last = points[points.len() - 1];
        if first[0].abs() > GEOM_TOL || last[1].abs() > GEOM_TOL {
            return Err(RegionError::InvalidChain);
        }
        Ok(Self::from_point_cloud(points))
    }

    /// Downward-closed convex hull of an arbitrary set of nonnegative
    /// points (the origin is always included).
    pub fn from_point_cloud(points: &[Point]) -> Self {
        let hull = upper_hull(points);
        let mut hs = Vec::new();
        let max_r1 = hull.iter().map(|p| p[0]).fold(0.0, f64::max);
        let max_r2 = hull.iter().map(|p| p[1]).fold(0.0, f64::max);
        for w in hull.windows(2) {
            let (p, q) = (w[0], w[1]);
            let dx = q[0] - p[0];
            let dy = p[1] - q[1];
            if dx <= GEOM_TOL || dy <= GEOM_TOL {
                continue;
            }
            // normal (dy, dx) points up-right
            let s = dx.max(dy);
            let (a1, a2) = (dy / s, dx / s);
            let b = (a1 * p[0] + a2 * p[1]).max(a1 * q[0] + a2 * q[1]);
            hs.push(HalfSpace { a1, a2, b });
        }
        hs.push(HalfSpace {
            a1: 1.0,
            a2: 0.0,
            b: max_r1,
        });
        hs.push(HalfSpace {
            a1: 0.0,
            a2: 1.0,
            b: max_r2,
        });
        Self::new(hs).expect("hull halfspaces are valid")
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn max_r1(&self) -> f64 {
        self.vertices.last().map_or(0.0, |p| p[0])
    }

    pub fn max_r2(&self) -> f64 {
        self.vertices.first().map_or(0.0, |p| p[1])
    }

    /// Largest `mu1 R1 + mu2 R2` over the region and a vertex attaining it.
    pub fn max_weighted(&self, mu1: f64, mu2: f64) -> (f64, Point) {
        let mut best = (f64::NEG_INFINITY, [0.0, 0.0]);
        for &p in &self.vertices {
            let v = mu1 * p[0] + mu2 * p[1];
            if v > best.0 {
                best = (v, p);
            }
        }
        best
    }

    /// `max_weighted` without the argmax.
    pub fn support(&self, mu1: f64, mu2: f64) -> f64 {
        self.max_weighted(mu1, mu2).0
    }

    /// Largest `R` with `(R, R)` in the region.
    pub fn max_symmetric(&self) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| h.b / (h.a1 + h.a2))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains_point(&self, p: Point, tol: f64) -> bool {
        p[0] >= -tol && p[1] >= -tol && self.halfspaces.iter().all(|h| h.excess(p) <= tol)
    }

    /// Same region with user labels exchanged.
    pub fn mirrored(&self) -> Self {
        Self::new(self.halfspaces.iter().map(HalfSpace::mirrored).collect()).expect("mirror of a valid region")
    }

    /// Minkowski sum with the square `[0, g]^2`: every rate grows by at most
    /// `g` bits. Redundant halfspaces are first tightened to touch the
    /// region, so the result is exact.
    pub fn inflate(&self, g: f64) -> Self {
        let mut hs: Vec<HalfSpace> = self
            .halfspaces
            .iter()
            .map(|h| {
                let support = self.support(h.a1, h.a2);
                HalfSpace {
                    b: h.b.min(support),
                    ..*h
                }
            })
            .collect();
        if !hs.iter().any(|h| h.a2 == 0.0) {
            hs.push(HalfSpace {
                a1: 1.0,
                a2: 0.0,
                b: self.max_r1(),
            });
        }
        if !hs.iter().any(|h| h.a1 == 0.0) {
            hs.push(HalfSpace {
                a1: 0.0,
                a2: 1.0,
                b: self.max_r2(),
            });
        }
        for h in &mut hs {
            h.b += g * (h.a1 + h.a2);
        }
        Self::new(hs).expect("inflation keeps a valid region")
    }

    /// Mutual containment within `tol`.
    pub fn equals(&self, other: &Self, tol: f64) -> bool {
        contains(self, other, tol).holds && contains(other, self, tol).holds
    }

    pub fn to_json(&self) -> RegionJson {
        RegionJson {
            halfspaces: self.halfspaces.clone(),
            vertices: Some(self.vertices.clone()),
        }
    }

    pub fn from_json(json: &RegionJson) -> Result<Self, RegionError> {
        if !json.halfspaces.is_empty() {
            Self::new(json.halfspaces.clone())
        } else if let Some(v) = &json.vertices {
            if v.is_empty() {
                return Err(RegionError::EmptyJson);
            }
            Ok(Self::from_point_cloud(v))
        } else {
            Err(RegionError::EmptyJson)
        }
    }
}

/// Serialized region: halfspaces plus (optionally on input) vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionJson {
    #[serde(default)]
    pub halfspaces: Vec<HalfSpace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Point>>,
}

/// Whether every vertex of `inner` satisfies every halfspace of
/// `outer_candidate` up to `tol` (in normalized bits).
pub fn contains(outer_candidate: &RateRegion, inner: &RateRegion, tol: f64) -> Containment {
    let mut worst: Option<Violation> = None;
    for &v in inner.vertices() {
        for &h in outer_candidate.halfspaces() {
            let e = h.excess(v);
            if worst.is_none_or(|w| e > w.excess) {
                worst = Some(Violation {
                    vertex: v,
                    halfspace: h,
                    excess: e,
                });
            }
        }
    }
    let max_excess = worst.map_or(f64::NEG_INFINITY, |w| w.excess);
    let holds = max_excess <= tol;
    Containment {
        holds,
        max_excess,
        witness: if holds { None } else { worst },
    }
}

/// Convex hull of the union of two regions.
pub fn conv_union(a: &RateRegion, b: &RateRegion) -> RateRegion {
    let mut pts = a.vertices().to_vec();
    pts.extend_from_slice(b.vertices());
    RateRegion::from_point_cloud(&pts)
}

fn compute_vertices(hs: &[HalfSpace]) -> Vec<Point> {
    let x_max = hs
        .iter()
        .filter(|h| h.a1 > 0.0)
        .map(|h| h.b / h.a1)
        .fold(f64::INFINITY, f64::min);
    let mut lines: Vec<Line> = hs
        .iter()
        .filter(|h| h.a2 > 0.0)
        .map(|h| Line {
            slope: -h.a1 / h.a2,
            intercept: h.b / h.a2,
        })
        .collect();
    let f = |x: f64| {
        hs.iter()
            .filter(|h| h.a2 > 0.0)
            .map(|h| (h.b - h.a1 * x) / h.a2)
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    };

    // lower envelope of min over lines, slopes decreasing left to right
    lines.sort_by(|p, q| q.slope.total_cmp(&p.slope).then(p.intercept.total_cmp(&q.intercept)));
    let mut env: Vec<Line> = Vec::new();
    for l in lines {
        if let Some(last) = env.last() {
            if last.slope == l.slope {
                continue;
            }
        }
        while env.len() >= 2 {
            let l1 = &env[env.len() - 2];
            let l2 = &env[env.len() - 1];
            // l2 is useless if l3 overtakes l1 no later than l2 does
            let x12 = (l2.intercept - l1.intercept) / (l1.slope - l2.slope);
            let x13 = (l.intercept - l1.intercept) / (l1.slope - l.slope);
            if x13 <= x12 {
                env.pop();
            } else {
                break;
            }
        }
        env.push(l);
    }

    let mut out: Vec<Point> = vec![[0.0, f(0.0)]];
    for w in env.windows(2) {
        let x = (w[1].intercept - w[0].intercept) / (w[0].slope - w[1].slope);
        if x > 0.0 && x < x_max {
            out.push([x, f(x)]);
        }
    }
    out.push([x_max, f(x_max)]);
    out.push([x_max, 0.0]);

    let mut clean: Vec<Point> = Vec::with_capacity(out.len());
    for p in out {
        match clean.last() {
            Some(q) if (p[0] - q[0]).abs() <= GEOM_TOL && (p[1] - q[1]).abs() <= GEOM_TOL => {}
            _ => clean.push(p),
        }
    }
    clean
}

/// Upper-right convex chain of `points` together with the origin and the
/// axis projections, ordered from the `R2` axis to the `R1` axis.
fn upper_hull(points: &[Point]) -> Vec<Point> {
    let max_r1 = points.iter().map(|p| p[0]).fold(0.0, f64::max);
    let max_r2 = points.iter().map(|p| p[1]).fold(0.0, f64::max);
    let mut pts: Vec<Point> = points.to_vec();
    pts.push([0.0, max_r2]);
    pts.push([max_r1, 0.0]);
    pts.sort_by(|p, q| p[0].total_cmp(&q[0]).then(q[1].total_cmp(&p[1])));
    let cross = |o: Point, a: Point, b: Point| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<Point> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}
