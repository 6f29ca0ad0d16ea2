//! Exact minimum touching ball by candidate enumeration.
//!
//! The optimal center is either equidistant from three segment features
//! (endpoints or segment interiors) of the farthest trajectories, or it is
//! the minimum of the distance to two such features along their bisector.
//! Both kinds of points are enumerated in closed form from every pair and
//! triple of features and scored with [`touching_radius`]; the best one wins.
//!
//! Enumeration is cubic in the number of features. Two pruning rules keep it
//! usable: a pair or triple whose features are farther apart than twice the
//! best radius found so far cannot generate the optimum, and a candidate
//! whose distance to its own generators already exceeds the best radius is
//! dropped before scoring. Neither rule can discard the optimum, whose
//! generators all sit at distance exactly `r*` from it. A coarse branch and
//! bound on the touching radius first fixes an upper bound and a box that
//! holds every optimal center; candidates outside the box are not scored.

use crate::error::SolveError;
use crate::geom::{
    dist_point_segment, dist_tol, diameter_2approx, segment_segment_intersection,
    touching_radius, touching_radius_within, Ball, Point, Rect, Segment, SegmentIntersection,
    TrajectorySet, TOL_PT,
};

/// Parallelism threshold on the sine of the angle between two directions.
const PARALLEL_SIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeatureKind {
    Endpoint(Point),
    Interior(Segment),
}

/// An endpoint or the open interior of one trajectory segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feature {
    pub kind: FeatureKind,
    /// Index of the owning trajectory.
    pub owner: usize,
}

impl Feature {
    pub fn endpoint(p: Point, owner: usize) -> Self {
        Self {
            kind: FeatureKind::Endpoint(p),
            owner,
        }
    }

    pub fn interior(s: Segment, owner: usize) -> Self {
        Self {
            kind: FeatureKind::Interior(s),
            owner,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateKind {
    Waypoint,
    PairMin,
    TripleEquidistant,
    Crossing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub center: Point,
    pub generators: Vec<Feature>,
    pub kind: CandidateKind,
}

/// Exact solution plus the candidate it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub ball: Ball,
    pub candidate: Candidate,
    /// Number of candidate centers that were scored.
    pub evaluated: usize,
}

/// All features of a set: two endpoints and one interior per segment, and a
/// lone endpoint for each stationary trajectory.
pub fn features(set: &TrajectorySet) -> Vec<Feature> {
    let mut out = Vec::new();
    for (owner, t) in set.iter().enumerate() {
        if t.num_segments() == 0 {
            out.push(Feature::endpoint(t.first(), owner));
            continue;
        }
        for s in t.segments() {
            out.push(Feature::endpoint(s.a, owner));
            out.push(Feature::endpoint(s.b, owner));
            out.push(Feature::interior(s, owner));
        }
    }
    out
}

/// Supporting line in Hessian form: `n . x = h` with `|n| = 1`.
#[derive(Debug, Clone, Copy)]
struct Line {
    n: Point,
    h: f64,
}

impl Line {
    fn of(s: &Segment) -> Self {
        let u = s.dir() * (1.0 / s.len());
        let n = u.perp();
        Line { n, h: n.dot(s.a) }
    }

    #[inline]
    fn signed(&self, c: Point) -> f64 {
        self.n.dot(c) - self.h
    }
}

#[derive(Debug, Clone, Copy)]
enum Geo {
    Pt(Point),
    Seg(Segment, Line),
}

impl Geo {
    fn of(f: &Feature) -> Self {
        match f.kind {
            FeatureKind::Endpoint(p) => Geo::Pt(p),
            FeatureKind::Interior(s) => Geo::Seg(s, Line::of(&s)),
        }
    }

    /// Distance from `c` to the point, or to the supporting line.
    #[inline]
    fn eq_dist(&self, c: Point) -> f64 {
        match self {
            Geo::Pt(p) => c.dist(*p),
            Geo::Seg(_, l) => l.signed(c).abs(),
        }
    }

    /// Distance between the two closed point sets.
    fn set_dist(&self, o: &Geo) -> f64 {
        match (self, o) {
            (Geo::Pt(p), Geo::Pt(q)) => p.dist(*q),
            (Geo::Pt(p), Geo::Seg(s, _)) | (Geo::Seg(s, _), Geo::Pt(p)) => dist_point_segment(*p, s),
            (Geo::Seg(s, _), Geo::Seg(t, _)) => seg_seg_dist(s, t),
        }
    }
}

fn seg_seg_dist(s: &Segment, t: &Segment) -> f64 {
    if !matches!(segment_segment_intersection(s, t), SegmentIntersection::None) {
        return 0.0;
    }
    dist_point_segment(s.a, t)
        .min(dist_point_segment(s.b, t))
        .min(dist_point_segment(t.a, s))
        .min(dist_point_segment(t.b, s))
}

/// Minimum-radius centers for a pair of features.
pub fn pair_candidates(f1: &Feature, f2: &Feature) -> Vec<Point> {
    pair_points(&Geo::of(f1), &Geo::of(f2))
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

fn pair_points(g1: &Geo, g2: &Geo) -> Vec<(Point, CandidateKind)> {
    match (g1, g2) {
        (Geo::Pt(p), Geo::Pt(q)) => vec![(p.midpoint(*q), CandidateKind::PairMin)],
        (Geo::Pt(p), Geo::Seg(s, _)) | (Geo::Seg(s, _), Geo::Pt(p)) => {
            let lambda = s.project_param(*p);
            let slack = TOL_PT / s.len();
            if lambda < -slack || lambda > 1.0 + slack {
                return Vec::new();
            }
            let foot = s.at(lambda.clamp(0.0, 1.0));
            vec![(p.midpoint(foot), CandidateKind::PairMin)]
        }
        (Geo::Seg(s, _), Geo::Seg(t, lt)) => {
            let u = s.dir() * (1.0 / s.len());
            let v = t.dir() * (1.0 / t.len());
            if u.cross(v).abs() <= PARALLEL_SIN {
                // Parallel: one representative point of the midline, over
                // the part where the two segments face each other.
                let ta = (t.a - s.a).dot(u);
                let tb = (t.b - s.a).dot(u);
                let lo = ta.min(tb).max(0.0);
                let hi = ta.max(tb).min(s.len());
                if lo > hi + TOL_PT {
                    return Vec::new();
                }
                let on_s = s.a + u * (0.5 * (lo + hi));
                let on_t = on_s - lt.n * lt.signed(on_s);
                return vec![(on_s.midpoint(on_t), CandidateKind::PairMin)];
            }
            match segment_segment_intersection(s, t) {
                SegmentIntersection::Point(p) => vec![(p, CandidateKind::Crossing)],
                SegmentIntersection::Overlap(p, q) => vec![(p.midpoint(q), CandidateKind::Crossing)],
                SegmentIntersection::None => Vec::new(),
            }
        }
    }
}

/// Every point equidistant from three features (distance to a segment
/// interior is measured to its supporting line). Roots that are not finite
/// are dropped.
pub fn triple_candidates(f1: &Feature, f2: &Feature, f3: &Feature) -> Vec<Point> {
    triple_points(&Geo::of(f1), &Geo::of(f2), &Geo::of(f3), None)
}

/// [`triple_candidates`] restricted to `window`.
pub fn triple_candidates_within(f1: &Feature, f2: &Feature, f3: &Feature, window: &Rect) -> Vec<Point> {
    triple_points(&Geo::of(f1), &Geo::of(f2), &Geo::of(f3), Some(window))
}

fn triple_points(g1: &Geo, g2: &Geo, g3: &Geo, window: Option<&Rect>) -> Vec<Point> {
    let mut pts = Vec::new();
    let mut lines: Vec<Line> = Vec::with_capacity(3);
    for g in [g1, g2, g3] {
        match g {
            Geo::Pt(p) => pts.push(*p),
            Geo::Seg(_, l) => lines.push(*l),
        }
    }
    let mut out = Vec::new();
    match (pts.len(), lines.len()) {
        (3, 0) => out.extend(circumcenter(pts[0], pts[1], pts[2])),
        (2, 1) => {
            let (p, q) = (pts[0], pts[1]);
            let pq = q - p;
            if let Some(v) = pq.normalized() {
                out.extend(point_line_on_line(p.midpoint(q), v.perp(), p, &lines[0]));
            }
        }
        (1, 2) => {
            for (q0, v) in line_bisectors(&lines[0], &lines[1]) {
                out.extend(point_line_on_line(q0, v, pts[0], &lines[0]));
            }
        }
        (0, 3) => {
            let (l1, l2, l3) = (lines[0], lines[1], lines[2]);
            for s2 in [1.0, -1.0] {
                for s3 in [1.0, -1.0] {
                    let w2 = l1.n - l2.n * s2;
                    let k2 = l1.h - s2 * l2.h;
                    let w3 = l1.n - l3.n * s3;
                    let k3 = l1.h - s3 * l3.h;
                    out.extend(solve2(w2, k2, w3, k3));
                }
            }
        }
        _ => unreachable!("three features"),
    }
    out.retain(|p| p.is_finite() && window.map_or(true, |w| w.contains(*p)));
    dedup_points(&mut out);
    out
}

fn dedup_points(pts: &mut Vec<Point>) {
    let mut kept: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts.drain(..) {
        if kept.iter().all(|q| q.dist(p) > TOL_PT) {
            kept.push(p);
        }
    }
    *pts = kept;
}

fn circumcenter(a: Point, b: Point, c: Point) -> Option<Point> {
    let ab = b - a;
    let ac = c - a;
    let d = 2.0 * ab.cross(ac);
    if d.abs() <= TOL_PT * ab.norm() * ac.norm() {
        return None;
    }
    let ab2 = ab.norm_sq();
    let ac2 = ac.norm_sq();
    let ux = (ac.y * ab2 - ab.y * ac2) / d;
    let uy = (ab.x * ac2 - ac.x * ab2) / d;
    Some(a + Point::new(ux, uy))
}

/// Solves `w2 . c = k2`, `w3 . c = k3`.
fn solve2(w2: Point, k2: f64, w3: Point, k3: f64) -> Option<Point> {
    let det = w2.cross(w3);
    if det.abs() <= 1e-12 * (w2.norm() * w3.norm()).max(1e-300) || det == 0.0 {
        return None;
    }
    Some(Point::new((k2 * w3.y - k3 * w2.y) / det, (w2.x * k3 - w3.x * k2) / det))
}

/// The (up to two) angle bisectors of two lines, as point + unit direction.
fn line_bisectors(l1: &Line, l2: &Line) -> Vec<(Point, Point)> {
    let mut out = Vec::with_capacity(2);
    for s in [1.0, -1.0] {
        let w = l1.n - l2.n * s;
        let k = l1.h - s * l2.h;
        let wn = w.norm();
        if wn <= 1e-12 {
            continue;
        }
        out.push((w * (k / (wn * wn)), w.perp() * (1.0 / wn)));
    }
    out
}

/// Points `q0 + t v` (|v| = 1) equidistant from point `p` and line `l`.
fn point_line_on_line(q0: Point, v: Point, p: Point, l: &Line) -> Vec<Point> {
    let w = q0 - p;
    let e = l.signed(q0);
    let g = l.n.dot(v);
    let a = 1.0 - g * g;
    let b = 2.0 * (v.dot(w) - e * g);
    let c = w.norm_sq() - e * e;
    solve_quadratic(a, b, c)
        .into_iter()
        .map(|t| q0 + v * t)
        .collect()
}

fn solve_quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-12 * scale {
        if b.abs() <= 1e-12 * scale {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc > -1e-12 * (b * b + (4.0 * a * c).abs()) {
            disc = 0.0;
        } else {
            return Vec::new();
        }
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return vec![0.0];
    }
    let r1 = q / a;
    let r2 = c / q;
    if (r1 - r2).abs() <= f64::EPSILON * r1.abs().max(r2.abs()) {
        vec![r1]
    } else {
        vec![r1, r2]
    }
}

/// Running optimum with the (radius, lexicographic center) tie-break.
struct Best {
    ball: Ball,
    candidate: Candidate,
    evaluated: usize,
}

impl Best {
    fn bound(&self) -> f64 {
        self.ball.radius + dist_tol(self.ball.radius)
    }

    fn offer(&mut self, c: Point, set: &TrajectorySet, make: impl FnOnce() -> Candidate) {
        self.evaluated += 1;
        let Some(r) = touching_radius_within(c, set, self.bound()) else {
            return;
        };
        let better = if r < self.ball.radius - dist_tol(self.ball.radius) {
            true
        } else {
            c.lex_cmp(&self.ball.center).is_lt()
        };
        if better {
            self.ball = Ball::new(c, r);
            self.candidate = make();
        }
    }
}

/// Exact minimum touching ball of a trajectory set.
pub fn exact_tmtb(set: &TrajectorySet) -> Result<Ball, SolveError> {
    exact_tmtb_detailed(set).map(|s| s.ball)
}

pub fn exact_tmtb_detailed(set: &TrajectorySet) -> Result<ExactSolution, SolveError> {
    if set.is_empty() {
        return Err(SolveError::EmptyInput);
    }
    let first = set.trajectories()[0].first();
    if set.len() == 1 {
        return Ok(ExactSolution {
            ball: Ball::new(first, 0.0),
            candidate: Candidate {
                center: first,
                generators: Vec::new(),
                kind: CandidateKind::Waypoint,
            },
            evaluated: 0,
        });
    }

    let feats = unique_features(set);
    let geos: Vec<Geo> = feats.iter().map(Geo::of).collect();
    let window = set.bounds().expanded(10.0 * diameter_2approx(set));

    let mut best = Best {
        ball: Ball::new(first, touching_radius(first, set)),
        candidate: Candidate {
            center: first,
            generators: Vec::new(),
            kind: CandidateKind::Waypoint,
        },
        evaluated: 1,
    };

    for w in set.waypoints() {
        best.offer(w, set, || Candidate {
            center: w,
            generators: Vec::new(),
            kind: CandidateKind::Waypoint,
        });
    }

    let cover = localize(set, best.ball.radius);
    let cap = cover.upper + dist_tol(cover.upper);
    let limit = |b: &Best| b.bound().min(cap);
    let region = cover.bbox.expanded(TOL_PT * (1.0 + cover.bbox.width().max(cover.bbox.height())));
    let idx: Vec<usize> = (0..feats.len()).collect();
    let window = Rect {
        min: Point::new(window.min.x.max(region.min.x), window.min.y.max(region.min.y)),
        max: Point::new(window.max.x.min(region.max.x), window.max.y.min(region.max.y)),
    };

    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            for (c, kind) in pair_points(&geos[i], &geos[j]) {
                let d = geos[i].eq_dist(c).min(geos[j].eq_dist(c));
                if d > limit(&best) || !c.is_finite() || !region.contains(c) {
                    continue;
                }
                best.offer(c, set, || Candidate {
                    center: c,
                    generators: vec![feats[i], feats[j]],
                    kind,
                });
            }
        }
    }

    // Feature pairs close enough to share a generating ball of radius
    // at most the current best.
    let reach = 2.0 * limit(&best) + TOL_PT;
    let m = idx.len();
    let mut near = vec![false; m * m];
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); m];
    for a in 0..m {
        for b in (a + 1)..m {
            if geos[idx[a]].set_dist(&geos[idx[b]]) <= reach {
                near[a * m + b] = true;
                nbrs[a].push(b);
            }
        }
    }

    for a in 0..m {
        let na = &nbrs[a];
        for (p, &b) in na.iter().enumerate() {
            for &c3 in &na[p + 1..] {
                if !near[b * m + c3] {
                    continue;
                }
                let (i, j, k) = (idx[a], idx[b], idx[c3]);
                for c in triple_points(&geos[i], &geos[j], &geos[k], Some(&window)) {
                    let d = geos[i]
                        .eq_dist(c)
                        .min(geos[j].eq_dist(c))
                        .min(geos[k].eq_dist(c));
                    if d > limit(&best) {
                        continue;
                    }
                    best.offer(c, set, || Candidate {
                        center: c,
                        generators: vec![feats[i], feats[j], feats[k]],
                        kind: CandidateKind::TripleEquidistant,
                    });
                }
            }
        }
    }

    Ok(ExactSolution {
        ball: best.ball,
        candidate: best.candidate,
        evaluated: best.evaluated,
    })
}

/// Upper bound on the optimum and a box holding every center that attains
/// it.
struct Cover {
    upper: f64,
    bbox: Rect,
}

const COVER_CELLS: usize = 4096;
const COVER_LEVELS: usize = 40;

/// Branch and bound on the 1-Lipschitz touching radius: a cell is dropped
/// once `r(center) - half_diagonal` exceeds the best radius seen.
fn localize(set: &TrajectorySet, upper: f64) -> Cover {
    let slack = |u: f64| dist_tol(u) + TOL_PT;
    let b = set.bounds().expanded(upper);
    let side = b.width().max(b.height());
    let mid = b.min.midpoint(b.max);
    let mut upper = upper;
    let mut half = 0.5 * side;
    let mut cells: Vec<(Point, f64)> = vec![(mid, 0.0)];
    for level in 0..COVER_LEVELS {
        let hd = half * std::f64::consts::SQRT_2;
        for cell in cells.iter_mut() {
            cell.1 = touching_radius(cell.0, set);
            upper = upper.min(cell.1);
        }
        cells.retain(|&(_, r)| r - hd <= upper + slack(upper));
        if level + 1 == COVER_LEVELS || cells.len() * 4 > COVER_CELLS || hd <= 1e-3 * upper {
            break;
        }
        half *= 0.5;
        cells = cells
            .iter()
            .flat_map(|&(c, _)| {
                [(-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)]
                    .map(|(sx, sy)| (c + Point::new(sx * half, sy * half), 0.0))
            })
            .collect();
    }
    let hd = half * std::f64::consts::SQRT_2;
    cells.retain(|&(_, r)| r - hd <= upper + slack(upper));
    let bbox = Rect::around(cells.iter().map(|&(c, _)| c))
        .expect("the best cell always survives")
        .expanded(half);
    Cover { upper, bbox }
}

/// Features with repeated endpoints (shared waypoints) collapsed; repeated
/// generators only produce repeated candidates.
fn unique_features(set: &TrajectorySet) -> Vec<Feature> {
    let mut out: Vec<Feature> = Vec::new();
    let mut seen: Vec<Point> = Vec::new();
    for f in features(set) {
        if let FeatureKind::Endpoint(p) = f.kind {
            if seen.iter().any(|q| *q == p) {
                continue;
            }
            seen.push(p);
        }
        out.push(f);
    }
    out
}

/// Leave-one-out record for one trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Essentiality {
    pub index: usize,
    pub full_radius: f64,
    pub without: Ball,
    pub essential: bool,
}

/// For each trajectory, the exact ball of the set without it; a trajectory
/// is essential when removing it strictly shrinks the optimum.
pub fn essentiality_check(set: &TrajectorySet) -> Result<Vec<Essentiality>, SolveError> {
    if set.len() < 2 {
        return Err(SolveError::InvalidParameter(
            "leave-one-out needs at least two trajectories".into(),
        ));
    }
    let full = exact_tmtb(set)?.radius;
    (0..set.len())
        .map(|index| {
            let rest = set.without(index).expect("n >= 2");
            let without = exact_tmtb(&rest)?;
            Ok(Essentiality {
                index,
                full_radius: full,
                without,
                essential: without.radius < full - dist_tol(full),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Trajectory;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
        Segment::new(p(ax, ay), p(bx, by)).unwrap()
    }

    fn set(ts: &[&[(f64, f64)]]) -> TrajectorySet {
        TrajectorySet::new(ts.iter().map(|c| Trajectory::from_coords(c).unwrap()).collect()).unwrap()
    }

    fn close(a: Point, b: Point) -> bool {
        a.dist(b) < 1e-12
    }

    #[test]
    fn feature_counts() {
        let s = set(&[&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)], &[(5.0, 5.0)]]);
        let f = features(&s);
        assert_eq!(f.len(), 2 * 3 + 1);
        assert_eq!(f.iter().filter(|f| matches!(f.kind, FeatureKind::Interior(_))).count(), 2);
        assert_eq!(f.last().unwrap().owner, 1);
    }

    #[test]
    fn pair_examples() {
        let a = Feature::endpoint(p(0.0, 0.0), 0);
        let b = Feature::endpoint(p(0.0, 2.0), 1);
        assert_eq!(pair_candidates(&a, &b), vec![p(0.0, 1.0)]);

        let line = Feature::interior(seg(-1.0, 0.0, 1.0, 0.0), 0);
        assert_eq!(pair_candidates(&b, &line), vec![p(0.0, 1.0)]);

        // Projection outside the segment: nothing.
        let far = Feature::endpoint(p(3.0, 1.0), 1);
        assert!(pair_candidates(&far, &line).is_empty());

        let x1 = Feature::interior(seg(0.0, 0.0, 2.0, 2.0), 0);
        let x2 = Feature::interior(seg(0.0, 2.0, 2.0, 0.0), 1);
        let c = pair_candidates(&x1, &x2);
        assert_eq!(c.len(), 1);
        assert!(close(c[0], p(1.0, 1.0)));

        // Non-crossing, non-parallel interiors emit nothing.
        let y1 = Feature::interior(seg(0.0, 0.0, 1.0, 0.0), 0);
        let y2 = Feature::interior(seg(2.0, 1.0, 3.0, 3.0), 1);
        assert!(pair_candidates(&y1, &y2).is_empty());

        // Parallel interiors: midline over the facing range.
        let z1 = Feature::interior(seg(0.0, 0.0, 2.0, 0.0), 0);
        let z2 = Feature::interior(seg(1.0, 2.0, 3.0, 2.0), 1);
        assert_eq!(pair_candidates(&z1, &z2), vec![p(1.5, 1.0)]);
    }

    #[test]
    fn triple_circumcenter() {
        let s3 = 3f64.sqrt();
        let f = [
            Feature::endpoint(p(0.0, 0.0), 0),
            Feature::endpoint(p(2.0, 0.0), 1),
            Feature::endpoint(p(1.0, s3), 2),
        ];
        let c = triple_candidates(&f[0], &f[1], &f[2]);
        assert_eq!(c.len(), 1);
        assert!(c[0].dist(p(1.0, s3 / 3.0)) < 1e-12);
        let d: Vec<f64> = [p(0.0, 0.0), p(2.0, 0.0), p(1.0, s3)].iter().map(|q| q.dist(c[0])).collect();
        assert!((d[0] - d[1]).abs() < 1e-12 && (d[1] - d[2]).abs() < 1e-12);
    }

    #[test]
    fn triple_two_points_and_line() {
        let f = [
            Feature::endpoint(p(0.0, 0.0), 0),
            Feature::endpoint(p(2.0, 0.0), 1),
            Feature::interior(seg(-5.0, 2.0, 5.0, 2.0), 2),
        ];
        let c = triple_candidates(&f[0], &f[1], &f[2]);
        assert_eq!(c.len(), 1, "{c:?}");
        assert!(c[0].dist(p(1.0, 0.75)) < 1e-12);
        assert!((c[0].dist(p(0.0, 0.0)) - (2.0 - c[0].y)).abs() < 1e-12);
    }

    #[test]
    fn triple_collinear_points_is_empty() {
        let f = [
            Feature::endpoint(p(0.0, 0.0), 0),
            Feature::endpoint(p(1.0, 1.0), 1),
            Feature::endpoint(p(3.0, 3.0), 2),
        ];
        assert!(triple_candidates(&f[0], &f[1], &f[2]).is_empty());
    }

    #[test]
    fn triple_point_and_two_lines_equidistant() {
        let f = [
            Feature::endpoint(p(0.3, 2.0), 0),
            Feature::interior(seg(-4.0, 0.0, 4.0, 0.0), 1),
            Feature::interior(seg(-4.0, -1.0, 4.0, 5.0), 2),
        ];
        let c = triple_candidates(&f[0], &f[1], &f[2]);
        assert!(!c.is_empty() && c.len() <= 4);
        let (g0, g1, g2) = (Geo::of(&f[0]), Geo::of(&f[1]), Geo::of(&f[2]));
        for q in c {
            let d0 = g0.eq_dist(q);
            assert!((d0 - g1.eq_dist(q)).abs() < 1e-9 * d0.max(1.0));
            assert!((d0 - g2.eq_dist(q)).abs() < 1e-9 * d0.max(1.0));
        }
    }

    #[test]
    fn triple_three_lines_gives_in_and_excenters() {
        let f = [
            Feature::interior(seg(0.0, 0.0, 4.0, 0.0), 0),
            Feature::interior(seg(0.0, 0.0, 0.0, 3.0), 1),
            Feature::interior(seg(4.0, 0.0, 0.0, 3.0), 2),
        ];
        let c = triple_candidates(&f[0], &f[1], &f[2]);
        assert_eq!(c.len(), 4);
        // 3-4-5 triangle incenter at (1, 1).
        assert!(c.iter().any(|q| q.dist(p(1.0, 1.0)) < 1e-12));
    }

    #[test]
    fn parallel_segments_radius_one() {
        let s = set(&[&[(0.0, 0.0), (1.0, 0.0)], &[(0.0, 2.0), (1.0, 2.0)]]);
        let b = exact_tmtb(&s).unwrap();
        assert!((b.radius - 1.0).abs() < 1e-12);
        // Lexicographically smallest optimal center.
        assert!(close(b.center, p(0.0, 1.0)));
    }

    #[test]
    fn common_point_radius_zero() {
        let s = set(&[
            &[(0.0, 0.0), (2.0, 2.0)],
            &[(0.0, 2.0), (2.0, 0.0)],
            &[(1.0, -3.0), (1.0, 5.0), (4.0, 5.0)],
        ]);
        let b = exact_tmtb(&s).unwrap();
        assert!(b.radius < 1e-12);
        assert!(close(b.center, p(1.0, 1.0)));
    }

    #[test]
    fn single_trajectory_is_its_first_waypoint() {
        let s = set(&[&[(3.0, 1.0), (4.0, 1.0)]]);
        assert_eq!(exact_tmtb(&s).unwrap(), Ball::new(p(3.0, 1.0), 0.0));
    }

    #[test]
    fn point_trajectories_reduce_to_enclosing_circle() {
        let s3 = 3f64.sqrt();
        let s = set(&[&[(0.0, 0.0)], &[(2.0, 0.0)], &[(1.0, s3)], &[(1.0, 0.5)]]);
        let b = exact_tmtb(&s).unwrap();
        assert!((b.radius - 2.0 / s3).abs() < 1e-12);
    }

    #[test]
    fn duplicate_trajectory_is_not_essential() {
        let s = set(&[
            &[(0.0, 0.0), (1.0, 0.0)],
            &[(0.0, 3.0), (1.0, 3.0)],
            &[(0.0, 3.0), (1.0, 3.0)],
            &[(5.0, 1.0), (5.0, 2.0)],
        ]);
        let report = essentiality_check(&s).unwrap();
        assert!(!report[1].essential);
        assert!(!report[2].essential);
        assert!(report[0].essential);
        assert!(report[3].essential);
    }

    #[test]
    fn spanning_segment_through_the_ball_is_not_essential() {
        let s3 = 3f64.sqrt();
        // Three points define the optimum; a long segment through its center
        // is touched anyway.
        let s = set(&[&[(0.0, 0.0)], &[(2.0, 0.0)], &[(1.0, s3)], &[(-5.0, 0.6), (7.0, 0.5)]]);
        let report = essentiality_check(&s).unwrap();
        let flags: Vec<bool> = report.iter().map(|e| e.essential).collect();
        assert_eq!(flags, vec![true, true, true, false]);
        assert!((report[3].without.radius - 2.0 / s3).abs() < 1e-12);
    }
}
