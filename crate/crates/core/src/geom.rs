//! Planar primitives shared by every solver: points, segments, trajectories,
//! balls and the distance computations built on them.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::GeomError;

/// Absolute tolerance (input units) for degeneracy decisions.
pub const TOL_PT: f64 = 1e-9;
/// Relative tolerance for distance comparisons inside solvers.
pub const TOL_REL: f64 = 1e-9;
/// Absolute floor paired with [`TOL_REL`].
pub const TOL_ABS: f64 = 1e-12;

/// Slack allowed when comparing two distances of magnitude around `scale`.
#[inline]
pub fn dist_tol(scale: f64) -> f64 {
    (TOL_REL * scale.abs()).max(TOL_ABS)
}

/// `a > b` beyond the solver distance tolerance.
#[inline]
pub fn exceeds(a: f64, b: f64) -> bool {
    a > b + dist_tol(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Validating constructor; rejects NaN and infinite coordinates.
    pub fn try_new(x: f64, y: f64) -> Result<Self, GeomError> {
        let p = Self { x, y };
        if p.is_finite() {
            Ok(p)
        } else {
            Err(GeomError::NonFinite { x, y })
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    #[inline]
    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    /// Counter-clockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    #[inline]
    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Unit vector in the same direction, or `None` for a (near) zero vector.
    pub fn normalized(self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    /// Lexicographic order on (x, y); used for deterministic tie-breaking.
    pub fn lex_cmp(&self, o: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A closed, non-degenerate line segment from `a` to `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        if !a.is_finite() {
            return Err(GeomError::NonFinite { x: a.x, y: a.y });
        }
        if !b.is_finite() {
            return Err(GeomError::NonFinite { x: b.x, y: b.y });
        }
        if a.dist(b) <= TOL_PT {
            return Err(GeomError::DegenerateSegment { a, b });
        }
        Ok(Self { a, b })
    }

    /// Builds a segment whose endpoints the caller already knows to be
    /// finite and distinct (e.g. two consecutive waypoints of a valid
    /// trajectory).
    #[inline]
    pub(crate) const fn from_parts(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    #[inline]
    pub fn dir(&self) -> Point {
        self.b - self.a
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// The point `(1 - lambda) a + lambda b`.
    #[inline]
    pub fn at(&self, lambda: f64) -> Point {
        self.a + self.dir() * lambda
    }

    #[inline]
    pub fn midpoint(&self) -> Point {
        self.a.midpoint(self.b)
    }

    /// Parameter of the orthogonal projection of `p` onto the supporting
    /// line (unclamped).
    #[inline]
    pub fn project_param(&self, p: Point) -> f64 {
        let d = self.dir();
        (p - self.a).dot(d) / d.norm_sq()
    }

    /// Parameter in `[0, 1]` of the point of the segment closest to `p`.
    #[inline]
    pub fn closest_param(&self, p: Point) -> f64 {
        self.project_param(p).clamp(0.0, 1.0)
    }

    #[inline]
    pub fn closest_point(&self, p: Point) -> Point {
        self.at(self.closest_param(p))
    }
}

/// A trajectory: `k + 1` waypoints joined by `k` segments. A single waypoint
/// is a stationary trajectory with no segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    waypoints: Vec<Point>,
}

impl Trajectory {
    pub fn new(waypoints: Vec<Point>) -> Result<Self, GeomError> {
        if waypoints.is_empty() {
            return Err(GeomError::EmptyTrajectory);
        }
        for p in &waypoints {
            if !p.is_finite() {
                return Err(GeomError::NonFinite { x: p.x, y: p.y });
            }
        }
        for (i, w) in waypoints.windows(2).enumerate() {
            if w[0].dist(w[1]) <= TOL_PT {
                return Err(GeomError::RepeatedWaypoint { index: i + 1 });
            }
        }
        Ok(Self { waypoints })
    }

    pub fn point(p: Point) -> Result<Self, GeomError> {
        Self::new(vec![p])
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self, GeomError> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    #[inline]
    pub fn waypoints(&self) -> &[Point] {
        &self.waypoints
    }

    /// Number of segments (`k`).
    #[inline]
    pub fn num_segments(&self) -> usize {
        self.waypoints.len() - 1
    }

    pub fn segments(&self) -> impl ExactSizeIterator<Item = Segment> + '_ {
        self.waypoints
            .windows(2)
            .map(|w| Segment::from_parts(w[0], w[1]))
    }

    pub fn first(&self) -> Point {
        self.waypoints[0]
    }

    pub fn last(&self) -> Point {
        self.waypoints[self.waypoints.len() - 1]
    }
}

/// Closed disc `{ x : |x - center| <= radius }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0, "negative radius {radius}");
        Self {
            center,
            radius: radius.max(0.0),
        }
    }

    /// The ball centered at `center` with the smallest radius touching every
    /// trajectory of `set`.
    pub fn touching(center: Point, set: &TrajectorySet) -> Self {
        Self::new(center, touching_radius(center, set))
    }
}

/// A non-empty collection of trajectories; segment counts may differ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySet {
    trajectories: Vec<Trajectory>,
}

impl TrajectorySet {
    pub fn new(trajectories: Vec<Trajectory>) -> Result<Self, GeomError> {
        if trajectories.is_empty() {
            return Err(GeomError::EmptySet);
        }
        Ok(Self { trajectories })
    }

    #[inline]
    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.trajectories.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.trajectories.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Trajectory> {
        self.trajectories.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Trajectory> {
        self.trajectories.get(i)
    }

    /// Largest segment count over all trajectories.
    pub fn max_segments(&self) -> usize {
        self.iter().map(Trajectory::num_segments).max().unwrap_or(0)
    }

    pub fn waypoints(&self) -> impl Iterator<Item = Point> + '_ {
        self.iter().flat_map(|t| t.waypoints().iter().copied())
    }

    /// The set with trajectory `index` removed, or `None` if that would
    /// leave it empty.
    pub fn without(&self, index: usize) -> Option<TrajectorySet> {
        if self.len() <= 1 || index >= self.len() {
            return None;
        }
        let mut t = self.trajectories.clone();
        t.remove(index);
        Some(Self { trajectories: t })
    }

    /// Sub-collection picked by `indices` (in the given order).
    pub fn subset(&self, indices: &[usize]) -> Result<TrajectorySet, GeomError> {
        Self::new(
            indices
                .iter()
                .map(|&i| self.trajectories[i].clone())
                .collect(),
        )
    }

    /// Axis-aligned bounding box of all waypoints.
    pub fn bounds(&self) -> Rect {
        Rect::around(self.waypoints()).expect("trajectory sets are non-empty")
    }
}

impl<'a> IntoIterator for &'a TrajectorySet {
    type Item = &'a Trajectory;
    type IntoIter = std::slice::Iter<'a, Trajectory>;
    fn into_iter(self) -> Self::IntoIter {
        self.trajectories.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn around(points: impl IntoIterator<Item = Point>) -> Option<Rect> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut r = Rect {
            min: first,
            max: first,
        };
        for p in it {
            r.min.x = r.min.x.min(p.x);
            r.min.y = r.min.y.min(p.y);
            r.max.x = r.max.x.max(p.x);
            r.max.y = r.max.y.max(p.y);
        }
        Some(r)
    }

    pub fn expanded(&self, margin: f64) -> Rect {
        Rect {
            min: Point::new(self.min.x - margin, self.min.y - margin),
            max: Point::new(self.max.x + margin, self.max.y + margin),
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }
}

/// Distance from `p` to `s` together with the minimizing parameter.
#[inline]
pub fn closest_on_segment(p: Point, s: &Segment) -> (f64, f64) {
    let lambda = s.closest_param(p);
    (p.dist(s.at(lambda)), lambda)
}

#[inline]
pub fn dist_point_segment(p: Point, s: &Segment) -> f64 {
    closest_on_segment(p, s).0
}

pub fn dist_point_trajectory(p: Point, t: &Trajectory) -> f64 {
    if t.num_segments() == 0 {
        return p.dist(t.first());
    }
    t.segments()
        .map(|s| dist_point_segment(p, &s))
        .fold(f64::INFINITY, f64::min)
}

/// Smallest radius of a ball centered at `c` touching every trajectory.
pub fn touching_radius(c: Point, set: &TrajectorySet) -> f64 {
    set.iter()
        .map(|t| dist_point_trajectory(c, t))
        .fold(0.0, f64::max)
}

/// Like [`touching_radius`] but gives up as soon as the running maximum
/// exceeds `bound`, returning `None`.
pub fn touching_radius_within(c: Point, set: &TrajectorySet, bound: f64) -> Option<f64> {
    let mut r: f64 = 0.0;
    for t in set {
        r = r.max(dist_point_trajectory(c, t));
        if r > bound {
            return None;
        }
    }
    Some(r)
}

/// One-pass estimate of the diameter of all trajectory points: anchored at
/// the first waypoint, the farthest segment endpoint. The result lies in
/// `[diameter / 2, diameter]`.
pub fn diameter_2approx(set: &TrajectorySet) -> f64 {
    let anchor = set.trajectories()[0].first();
    set.waypoints()
        .map(|p| p.dist(anchor))
        .fold(0.0, f64::max)
}

/// Outcome of intersecting two segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentIntersection {
    None,
    Point(Point),
    /// Collinear overlap between the two given points (may coincide when
    /// the segments only share an endpoint).
    Overlap(Point, Point),
}

pub fn segment_segment_intersection(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let d1 = s1.dir();
    let d2 = s2.dir();
    let denom = d1.cross(d2);
    let w = s2.a - s1.a;
    let len1 = d1.norm();
    let len2 = d2.norm();

    if denom.abs() <= TOL_PT * len1 * len2 {
        // Parallel: only collinear pairs can meet.
        if w.cross(d1).abs() / len1 > TOL_PT {
            return SegmentIntersection::None;
        }
        let t0 = s1.project_param(s2.a);
        let t1 = s1.project_param(s2.b);
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        let slack = TOL_PT / len1;
        if lo > hi + slack {
            return SegmentIntersection::None;
        }
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, hi) };
        let p = s1.at(lo);
        let q = s1.at(hi);
        if p.dist(q) <= TOL_PT {
            return SegmentIntersection::Point(p);
        }
        return SegmentIntersection::Overlap(p, q);
    }

    let t = w.cross(d2) / denom;
    let u = w.cross(d1) / denom;
    let st = TOL_PT / len1;
    let su = TOL_PT / len2;
    if t < -st || t > 1.0 + st || u < -su || u > 1.0 + su {
        return SegmentIntersection::None;
    }
    SegmentIntersection::Point(s1.at(t.clamp(0.0, 1.0)))
}
