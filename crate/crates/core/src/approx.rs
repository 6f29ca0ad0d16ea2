//! (ε, ρ)-approximate touching balls.
//!
//! A center restricted to a segment `ℓ` is feasible at radius `τ` exactly
//! when it lies within `τ` of every constraining trajectory; on `ℓ` this is
//! an intersection of parameter intervals. [`estimate_rad`] shrinks `τ`
//! geometrically while that intersection stays non-empty. [`estimate_tmtb`]
//! runs it once along the first trajectory for a constant-factor estimate,
//! then again along offset copies ("ghosts") that form a fine net of the
//! sausage around that trajectory.

use std::cmp::Ordering;

use crate::error::SolveError;
use crate::geom::{
    diameter_2approx, dist_point_trajectory, dist_tol, Ball, Point, Segment, Trajectory, TrajectorySet,
    TOL_PT,
};

/// A closed parameter range `[lo, hi] ⊆ [0, 1]` along a segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ParamInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(0.0 <= lo && lo <= hi && hi <= 1.0, "bad interval [{lo}, {hi}]");
        // Adding zero turns -0 into +0 so ordering by bits agrees with `<=`.
        Self { lo: lo + 0.0, hi: hi + 0.0 }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, lambda: f64) -> bool {
        self.lo <= lambda && lambda <= self.hi
    }
}

/// Parameters of a segment (or a single point) where a center of radius
/// `tau` touches every constraining trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibleSet {
    pub piece: Piece,
    /// Disjoint, sorted by `lo`.
    pub intervals: Vec<ParamInterval>,
}

impl FeasibleSet {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Midpoint of the widest interval.
    pub fn witness(&self) -> Option<Point> {
        let widest = self
            .intervals
            .iter()
            .max_by(|a, b| a.width().total_cmp(&b.width()).then(Ordering::Greater))?;
        Some(self.piece.at(0.5 * (widest.lo + widest.hi)))
    }
}

/// A piece of a source trajectory along which centers are searched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Segment(Segment),
    /// A stationary trajectory; every parameter maps to the point.
    Point(Point),
}

impl Piece {
    pub fn at(&self, lambda: f64) -> Point {
        match self {
            Piece::Segment(s) => s.at(lambda),
            Piece::Point(p) => *p,
        }
    }

    fn of(t: &Trajectory) -> Vec<Piece> {
        if t.num_segments() == 0 {
            vec![Piece::Point(t.first())]
        } else {
            t.segments().map(Piece::Segment).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxParams {
    pub eps: f64,
    pub rho: f64,
    pub gamma: f64,
    pub tau0: f64,
}

impl ApproxParams {
    pub fn new(eps: f64, rho: f64, gamma: f64, tau0: f64) -> Result<Self, SolveError> {
        let p = Self { eps, rho, gamma, tau0 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        check_eps(self.eps)?;
        check_rho(self.rho)?;
        check_gamma(self.gamma)?;
        check_tau0(self.tau0)?;
        if self.tau0 < self.rho {
            return Err(SolveError::InvalidParameter(format!(
                "tau0 = {} is below rho = {}",
                self.tau0, self.rho
            )));
        }
        Ok(())
    }
}

fn check_eps(eps: f64) -> Result<(), SolveError> {
    if eps > 0.0 && eps <= 0.5 {
        Ok(())
    } else {
        Err(SolveError::InvalidParameter(format!("eps = {eps} is outside (0, 1/2]")))
    }
}

fn check_rho(rho: f64) -> Result<(), SolveError> {
    if rho >= 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(SolveError::InvalidParameter(format!("rho = {rho} must be finite and >= 0")))
    }
}

fn check_gamma(gamma: f64) -> Result<(), SolveError> {
    if gamma > 1.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(SolveError::InvalidParameter(format!("gamma = {gamma} must exceed 1")))
    }
}

fn check_tau0(tau0: f64) -> Result<(), SolveError> {
    if tau0 > 0.0 && tau0.is_finite() {
        Ok(())
    } else {
        Err(SolveError::InvalidParameter(format!("tau = {tau0} must be positive")))
    }
}

/// Parameters of `ell` within distance `tau` of `t2`, merged and sorted.
pub fn interval_within(ell: &Segment, t2: &Trajectory, tau: f64) -> Vec<ParamInterval> {
    let mut out: Vec<ParamInterval> = if t2.num_segments() == 0 {
        disc_interval(ell, t2.first(), tau).into_iter().collect()
    } else {
        t2.segments()
            .filter_map(|s| capsule_interval(ell, &s, tau))
            .collect()
    };
    merge(&mut out);
    out
}

fn merge(v: &mut Vec<ParamInterval>) {
    v.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut out: Vec<ParamInterval> = Vec::with_capacity(v.len());
    for iv in v.drain(..) {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
            _ => out.push(iv),
        }
    }
    *v = out;
}

/// `{ λ ∈ [0,1] : |ell(λ) - q| <= tau }`.
fn disc_interval(ell: &Segment, q: Point, tau: f64) -> Option<ParamInterval> {
    let d = ell.dir();
    let w = ell.a - q;
    let a = d.norm_sq();
    let b = d.dot(w);
    let c = w.norm_sq() - tau * tau;
    let disc = b * b - a * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    clip(Some((-b - sq) / a), Some((-b + sq) / a))
}

/// `{ λ : lo <= b0 + b1 λ <= hi }` as an unbounded range.
fn slab(b0: f64, b1: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    if b1 == 0.0 {
        return (lo <= b0 && b0 <= hi).then_some((f64::NEG_INFINITY, f64::INFINITY));
    }
    let t0 = (lo - b0) / b1;
    let t1 = (hi - b0) / b1;
    Some((t0.min(t1), t0.max(t1)))
}

/// `{ λ ∈ [0,1] : dist(ell(λ), s) <= tau }`: the line through `ell` cut
/// with the capsule around `s` (two end discs and the middle rectangle).
fn capsule_interval(ell: &Segment, s: &Segment, tau: f64) -> Option<ParamInterval> {
    let len = s.len();
    let u = s.dir() * (1.0 / len);
    let n = u.perp();
    let w = ell.a - s.a;
    let d = ell.dir();

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut take = |r: Option<(f64, f64)>| {
        if let Some((a, b)) = r {
            if a <= b {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
    };

    let along = slab(w.dot(u), d.dot(u), 0.0, len);
    let across = slab(w.dot(n), d.dot(n), -tau, tau);
    take(match (along, across) {
        (Some((a0, a1)), Some((c0, c1))) => Some((a0.max(c0), a1.min(c1))),
        _ => None,
    });
    for q in [s.a, s.b] {
        let dd = d.norm_sq();
        let wq = ell.a - q;
        let b = d.dot(wq);
        let c = wq.norm_sq() - tau * tau;
        let disc = b * b - dd * c;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            take(Some(((-b - sq) / dd, (-b + sq) / dd)));
        }
    }
    if lo > hi {
        return None;
    }
    clip(Some(lo), Some(hi))
}

fn clip(lo: Option<f64>, hi: Option<f64>) -> Option<ParamInterval> {
    let lo = lo?.max(0.0);
    let hi = hi?.min(1.0);
    (lo <= hi).then(|| ParamInterval::new(lo, hi))
}

/// Parameters covered by at least one interval of every list. An empty
/// family of lists constrains nothing and yields `[0, 1]`.
pub fn feasible_intersection(per_trajectory: &[Vec<ParamInterval>]) -> Vec<ParamInterval> {
    let m = per_trajectory.len();
    if m == 0 {
        return vec![ParamInterval::new(0.0, 1.0)];
    }
    if per_trajectory.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    // (position, 0 = open / 1 = close, owner); opens sort first so closed
    // intervals that touch still overlap.
    let mut events: Vec<(f64, u8, usize)> = Vec::new();
    for (t, list) in per_trajectory.iter().enumerate() {
        for iv in list {
            events.push((iv.lo, 0, t));
            events.push((iv.hi, 1, t));
        }
    }
    events.sort_by(|a, b| (a.0 + 0.0).total_cmp(&(b.0 + 0.0)).then(a.1.cmp(&b.1)));

    let mut active = vec![0usize; m];
    let mut covered = 0usize;
    let mut start = 0.0;
    let mut out: Vec<ParamInterval> = Vec::new();
    for (x, kind, t) in events {
        if kind == 0 {
            if active[t] == 0 {
                covered += 1;
                if covered == m {
                    start = x;
                }
            }
            active[t] += 1;
        } else {
            if covered == m {
                match out.last_mut() {
                    Some(last) if last.hi >= start => last.hi = last.hi.max(x),
                    _ => out.push(ParamInterval::new(start, x)),
                }
            }
            active[t] -= 1;
            if active[t] == 0 {
                covered -= 1;
            }
        }
    }
    out
}

/// Feasible parameters of `piece` at radius `tau` against `constraints`.
pub fn feasible_set<'a>(
    piece: Piece,
    constraints: impl IntoIterator<Item = &'a Trajectory>,
    tau: f64,
) -> FeasibleSet {
    let intervals = match piece {
        Piece::Segment(ell) => {
            let lists: Vec<Vec<ParamInterval>> = constraints
                .into_iter()
                .map(|t| interval_within(&ell, t, tau))
                .collect();
            feasible_intersection(&lists)
        }
        Piece::Point(p) => {
            if constraints
                .into_iter()
                .all(|t| dist_point_trajectory(p, t) <= tau)
            {
                vec![ParamInterval::new(0.0, 0.0)]
            } else {
                Vec::new()
            }
        }
    };
    FeasibleSet { piece, intervals }
}

/// Result of one geometric-decreasing radius search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadEstimate {
    /// Ball at the witness center, radius tightened to its touching radius.
    pub ball: Ball,
    /// Threshold when the search stopped; `gamma * tau_final` is the
    /// smallest level found feasible.
    pub tau_final: f64,
    pub gamma: f64,
    /// Number of feasible-set computations.
    pub checks: usize,
}

impl RadEstimate {
    /// Smallest feasible level, `gamma * tau_final`.
    pub fn level(&self) -> f64 {
        self.gamma * self.tau_final
    }
}

/// Searches centers along `source` for the smallest feasible radius level.
///
/// Constraints are all of `set` except the trajectory at `exclude` (pass the
/// source's index when the source is a member of `set`). The threshold
/// starts at `tau0`, is divided by `gamma` after every feasible level, and
/// carries over from one source piece to the next.
pub fn estimate_rad(
    set: &TrajectorySet,
    source: &[Trajectory],
    exclude: Option<usize>,
    gamma: f64,
    rho: f64,
    tau0: f64,
) -> Result<RadEstimate, SolveError> {
    check_gamma(gamma)?;
    check_rho(rho)?;
    check_tau0(tau0)?;
    if source.is_empty() {
        return Err(SolveError::EmptyInput);
    }
    let constraints: Vec<&Trajectory> = set
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != exclude)
        .map(|(_, t)| t)
        .collect();

    let mut tau = tau0;
    let mut witness: Option<Point> = None;
    let mut checks = 0;
    for piece in source.iter().flat_map(Piece::of) {
        while tau > rho {
            checks += 1;
            let f = feasible_set(piece, constraints.iter().copied(), tau);
            match f.witness() {
                None => break,
                Some(w) => {
                    witness = Some(w);
                    tau /= gamma;
                }
            }
        }
    }

    let center = match witness {
        Some(w) => w,
        None => {
            // Never feasible below tau0 (tau0 <= rho, or tau0 under the
            // restricted optimum); fall back to the best source waypoint.
            tau = tau0 / gamma;
            source
                .iter()
                .flat_map(|t| t.waypoints().iter().copied())
                .min_by(|a, b| {
                    crate::geom::touching_radius(*a, set).total_cmp(&crate::geom::touching_radius(*b, set))
                })
                .expect("non-empty source")
        }
    };
    Ok(RadEstimate {
        ball: Ball::touching(center, set),
        tau_final: tau,
        gamma,
        checks,
    })
}

/// Offset copies of a trajectory covering its `tau`-sausage.
#[derive(Debug, Clone, PartialEq)]
pub struct GhostSet {
    pub trajectories: Vec<Trajectory>,
    pub source: Trajectory,
    pub tau: f64,
    pub eps: f64,
    /// Distance between neighbouring offsets, at most `tau * eps / 12`.
    pub spacing: f64,
}

impl GhostSet {
    /// Offsets run over `i * spacing` for `i` in `-count..=count`.
    pub fn count_per_side(eps: f64) -> usize {
        (12.0 / eps - 1e-9).ceil() as usize
    }
}

/// Ghost trajectories of `t` at radius `tau` and precision `eps`.
///
/// Ghost `i` follows `t` at signed offset `δ = i·τ/N` with `N = ⌈12/ε⌉`
/// (left of the direction of travel is positive), so neighbours are at most
/// `τε/12` apart. Each ghost:
/// - runs parallel to every segment over the segment's full extent;
/// - on the outer side of a bend, follows an arc of radius `|δ|` around the
///   waypoint, subdivided finely enough that the chords stay within a fraction of
///   the spacing of the arc;
/// - on the inner side, jumps straight between the two offset segments, which
///   cross on the angular bisector;
/// - is extended past both ends of `t` up to the cap circle of radius `τ`
///   (by exactly `τ` for the central ghost).
///
/// Every ghost point is within `τ` of `t`, and every point of the sausage is
/// within the spacing of some ghost. A stationary trajectory is treated as a
/// zero-length horizontal segment.
pub fn ghost_trajectories(t: &Trajectory, tau: f64, eps: f64) -> Result<GhostSet, SolveError> {
    check_tau0(tau)?;
    check_eps(eps)?;
    let per_side = GhostSet::count_per_side(eps);
    let spacing = tau / per_side as f64;
    let signed = -(per_side as i64)..=(per_side as i64);
    let trajectories = signed
        .map(|i| ghost_at(t, tau, (i as f64) * spacing, spacing))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GhostSet {
        trajectories,
        source: t.clone(),
        tau,
        eps,
        spacing,
    })
}

fn ghost_at(t: &Trajectory, tau: f64, delta: f64, spacing: f64) -> Result<Trajectory, SolveError> {
    let wp = t.waypoints();
    let reach = (tau * tau - delta * delta).max(0.0).sqrt();
    let mut pts: Vec<Point> = Vec::new();

    if wp.len() == 1 {
        let d = Point::new(1.0, 0.0);
        let base = wp[0] + d.perp() * delta;
        pts.push(base - d * reach);
        pts.push(base + d * reach);
        return Ok(Trajectory::new(dedup_consecutive(pts))?);
    }

    let dirs: Vec<Point> = t
        .segments()
        .map(|s| s.dir() * (1.0 / s.len()))
        .collect();
    let k = dirs.len();

    pts.push(wp[0] + dirs[0].perp() * delta - dirs[0] * reach);
    pts.push(wp[0] + dirs[0].perp() * delta);
    for j in 0..k - 1 {
        let p = wp[j + 1];
        let (d0, d1) = (dirs[j], dirs[j + 1]);
        pts.push(p + d0.perp() * delta);
        let turn = d0.cross(d1).atan2(d0.dot(d1));
        if delta != 0.0 && delta * turn < 0.0 {
            let u0 = d0.perp() * delta.signum();
            let steps = arc_steps(delta.abs(), turn.abs(), spacing);
            for s in 1..steps {
                let a = turn * (s as f64) / (steps as f64);
                pts.push(p + u0.rotate(a) * delta.abs());
            }
        }
        pts.push(p + d1.perp() * delta);
    }
    let last = wp[k];
    let dl = dirs[k - 1];
    pts.push(last + dl.perp() * delta);
    pts.push(last + dl.perp() * delta + dl * reach);
    Ok(Trajectory::new(dedup_consecutive(pts))?)
}

/// Chord count for an arc of `radius` and `angle` whose sagitta stays
/// below `0.4 * spacing`.
fn arc_steps(radius: f64, angle: f64, spacing: f64) -> usize {
    let ratio = 0.4 * spacing / radius;
    if ratio >= 1.0 {
        return 1;
    }
    let max_step = 2.0 * (1.0 - ratio).acos();
    ((angle / max_step).ceil() as usize).max(1)
}

fn dedup_consecutive(pts: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last().map_or(true, |q| q.dist(p) > TOL_PT) {
            out.push(p);
        }
    }
    out
}

/// Whether `x` lies in the closed `tau`-neighbourhood of `t`.
pub fn sausage_contains(t: &Trajectory, tau: f64, x: Point) -> bool {
    dist_point_trajectory(x, t) <= tau + dist_tol(tau)
}

/// Every stage of [`estimate_tmtb`].
#[derive(Debug, Clone, PartialEq)]
pub struct TmtbEstimate {
    pub ball: Ball,
    pub stage1: RadEstimate,
    pub ghosts: Option<GhostSet>,
    pub stage3: Option<RadEstimate>,
}

/// A ball touching every trajectory with radius at most
/// `(1 + eps) * max(r*, rho)`.
pub fn estimate_tmtb(set: &TrajectorySet, eps: f64, rho: f64) -> Result<Ball, SolveError> {
    estimate_tmtb_detailed(set, eps, rho).map(|e| e.ball)
}

pub fn estimate_tmtb_detailed(set: &TrajectorySet, eps: f64, rho: f64) -> Result<TmtbEstimate, SolveError> {
    check_eps(eps)?;
    check_rho(rho)?;
    let source = set.trajectories()[0].clone();
    let diameter = diameter_2approx(set);
    if diameter == 0.0 {
        // Every waypoint coincides.
        let ball = Ball::new(source.first(), 0.0);
        return Ok(TmtbEstimate {
            ball,
            stage1: RadEstimate {
                ball,
                tau_final: 0.0,
                gamma: 2.0,
                checks: 0,
            },
            ghosts: None,
            stage3: None,
        });
    }

    let stage1 = estimate_rad(set, std::slice::from_ref(&source), Some(0), 2.0, rho, 2.0 * diameter)?;
    if stage1.ball.radius == 0.0 {
        return Ok(TmtbEstimate {
            ball: stage1.ball,
            stage1,
            ghosts: None,
            stage3: None,
        });
    }
    let tau = stage1.level();
    let ghosts = ghost_trajectories(&source, tau, eps)?;
    let stage3 = estimate_rad(set, &ghosts.trajectories, None, 1.0 + eps / 3.0, rho, tau)?;
    let ball = if stage3.ball.radius <= stage1.ball.radius {
        stage3.ball
    } else {
        stage1.ball
    };
    Ok(TmtbEstimate {
        ball,
        stage1,
        ghosts: Some(ghosts),
        stage3: Some(stage3),
    })
}
