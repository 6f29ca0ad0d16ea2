//! Randomized LP-type solver for touching balls of single segments.
//!
//! Segments are convex, so the problem has combinatorial dimension three in
//! the plane: the optimum is fixed by at most three segments. The solver
//! inserts segments in a seeded random order and, whenever one is violated,
//! recomputes a basis from the current basis plus the violator and replays
//! the prefix with that basis held fixed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SolveError;
use crate::exact::exact_tmtb;
use crate::geom::{dist_point_segment, dist_tol, exceeds, Ball, Point, Segment, Trajectory, TrajectorySet};

/// Largest basis size in the plane.
pub const MAX_BASIS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    pub segments: Vec<Segment>,
    pub ball: Ball,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub ball: Ball,
    pub basis: Basis,
    /// Number of violation tests performed.
    pub violation_tests: usize,
    /// Number of basis recomputations.
    pub basis_updates: usize,
}

/// Exact minimum touching ball of at most three segments.
///
/// One segment gives its midpoint with radius zero. Larger inputs are solved
/// by candidate enumeration; among equally small balls the one with the
/// lexicographically smallest center is returned.
pub fn mtb_small(segments: &[Segment]) -> Ball {
    match segments {
        [] => Ball::new(Point::default(), 0.0),
        [s] => Ball::new(s.midpoint(), 0.0),
        _ => {
            let set = segment_set(segments);
            exact_tmtb(&set).expect("non-empty input")
        }
    }
}

fn segment_set(segments: &[Segment]) -> TrajectorySet {
    TrajectorySet::new(
        segments
            .iter()
            .map(|s| Trajectory::new(vec![s.a, s.b]).expect("segments are non-degenerate"))
            .collect(),
    )
    .expect("non-empty input")
}

/// Whether `s` lies farther from the ball's center than its radius allows.
pub fn violates(ball: &Ball, s: &Segment) -> bool {
    exceeds(dist_point_segment(ball.center, s), ball.radius)
}

/// Extracts the single segment of every trajectory.
pub fn single_segments(set: &TrajectorySet) -> Result<Vec<Segment>, SolveError> {
    set.iter()
        .enumerate()
        .map(|(index, t)| {
            if t.num_segments() == 1 {
                Ok(t.segments().next().expect("one segment"))
            } else {
                Err(SolveError::NotSingleSegment {
                    index,
                    segments: t.num_segments(),
                })
            }
        })
        .collect()
}

pub fn lp_segment_mtb(segments: &[Segment], seed: u64) -> Result<Ball, SolveError> {
    lp_segment_solve(segments, seed).map(|s| s.ball)
}

pub fn lp_segment_solve(segments: &[Segment], seed: u64) -> Result<LpSolution, SolveError> {
    if segments.is_empty() {
        return Err(SolveError::EmptyInput);
    }
    let mut order: Vec<usize> = (0..segments.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n = segments.len();
    let mut solver = Solver {
        segments,
        order,
        tests: 0,
        updates: 0,
        limit: 10 * n * n,
    };
    let start = solver.order[0];
    let (basis, ball) = solver.run(n, vec![start], mtb_small(&[segments[start]]))?;
    Ok(LpSolution {
        ball,
        basis: Basis {
            segments: basis.iter().map(|&i| segments[i]).collect(),
            ball,
        },
        violation_tests: solver.tests,
        basis_updates: solver.updates,
    })
}

struct Solver<'a> {
    segments: &'a [Segment],
    order: Vec<usize>,
    tests: usize,
    updates: usize,
    limit: usize,
}

impl Solver<'_> {
    /// Solves over the first `prefix` segments of the order, keeping
    /// `basis` in the solution.
    fn run(&mut self, prefix: usize, mut basis: Vec<usize>, mut ball: Ball) -> Result<(Vec<usize>, Ball), SolveError> {
        for pos in 0..prefix {
            let idx = self.order[pos];
            if basis.contains(&idx) {
                continue;
            }
            self.tests += 1;
            if !violates(&ball, &self.segments[idx]) {
                continue;
            }
            self.updates += 1;
            if self.updates > self.limit {
                return Err(SolveError::BasisCycling { steps: self.updates });
            }
            let mut grown = basis.clone();
            grown.push(idx);
            let (b, bl) = self.basis_of(&grown);
            let (b, bl) = self.run(pos + 1, b, bl)?;
            basis = b;
            ball = bl;
        }
        Ok((basis, ball))
    }

    /// A smallest subset of `ids` whose ball has the same radius as the ball
    /// of all of `ids` and violates none of them.
    fn basis_of(&self, ids: &[usize]) -> (Vec<usize>, Ball) {
        let segs: Vec<Segment> = ids.iter().map(|&i| self.segments[i]).collect();
        let full = mtb_small_any(&segs);
        let target = full.radius - dist_tol(full.radius);
        for size in 1..=ids.len().min(MAX_BASIS) {
            for pick in subsets(ids.len(), size) {
                let sub: Vec<Segment> = pick.iter().map(|&i| segs[i]).collect();
                let ball = mtb_small(&sub);
                if ball.radius >= target && segs.iter().all(|s| !violates(&ball, s)) {
                    return (pick.iter().map(|&i| ids[i]).collect(), ball);
                }
            }
        }
        // Only reachable through rounding; keep the three most constraining.
        let mut ranked: Vec<usize> = (0..ids.len()).collect();
        ranked.sort_by(|&a, &b| {
            dist_point_segment(full.center, &segs[b]).total_cmp(&dist_point_segment(full.center, &segs[a]))
        });
        ranked.truncate(MAX_BASIS);
        let sub: Vec<Segment> = ranked.iter().map(|&i| segs[i]).collect();
        (ranked.iter().map(|&i| ids[i]).collect(), mtb_small(&sub))
    }
}

/// Like [`mtb_small`] without the size restriction.
fn mtb_small_any(segments: &[Segment]) -> Ball {
    if segments.len() <= 1 {
        return mtb_small(segments);
    }
    exact_tmtb(&segment_set(segments)).expect("non-empty input")
}

/// All `size`-element index subsets of `0..n`, in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::with_capacity(size), &mut out);
    out
}

/// One failed axiom check.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomViolation {
    pub b: Vec<usize>,
    pub y: Vec<usize>,
    pub x: usize,
    pub f_b: f64,
    pub f_y: f64,
    pub f_bx: f64,
    pub f_yx: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AxiomReport {
    pub trials: usize,
    pub monotonicity: Vec<AxiomViolation>,
    pub locality: Vec<AxiomViolation>,
    /// Trials in which the locality premise `f(B + x) > f(B) = f(Y)` held.
    pub locality_premises: usize,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.monotonicity.is_empty() && self.locality.is_empty()
    }
}

/// Samples nested index sets `B ⊆ Y` and an extra index `x`, and checks
/// monotonicity `f(B) <= f(Y)` and locality `f(B+x) > f(B) = f(Y) ⇒
/// f(Y+x) > f(Y)` with `f` the exact touching radius.
///
/// Half of the trials draw `B` as a minimal subset of `Y` with the same
/// value, so the locality premise is actually exercised.
pub fn axiom_probe(set: &TrajectorySet, trials: usize, seed: u64) -> Result<AxiomReport, SolveError> {
    let n = set.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = |ids: &[usize]| -> Result<f64, SolveError> { Ok(exact_tmtb(&set.subset(ids)?)?.radius) };
    let mut report = AxiomReport {
        trials,
        ..AxiomReport::default()
    };

    for trial in 0..trials {
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(&mut rng);
        let y_len = rng.gen_range(1..=n);
        let mut y: Vec<usize> = all[..y_len].to_vec();
        y.sort_unstable();
        let f_y = f(&y)?;

        let mut b = if trial % 2 == 0 {
            let mut pick = y.clone();
            pick.shuffle(&mut rng);
            pick.truncate(rng.gen_range(1..=y.len()));
            pick
        } else {
            minimal_equal_subset(&y, f_y, &f)?
        };
        b.sort_unstable();
        let f_b = f(&b)?;
        let x = rng.gen_range(0..n);
        let with = |ids: &[usize]| {
            let mut v = ids.to_vec();
            if !v.contains(&x) {
                v.push(x);
            }
            v.sort_unstable();
            v
        };
        let f_bx = f(&with(&b))?;
        let f_yx = f(&with(&y))?;
        let record = AxiomViolation {
            b: b.clone(),
            y: y.clone(),
            x,
            f_b,
            f_y,
            f_bx,
            f_yx,
        };

        if exceeds(f_b, f_y) {
            report.monotonicity.push(record.clone());
        }
        let same = !exceeds(f_b, f_y) && !exceeds(f_y, f_b);
        if exceeds(f_bx, f_b) && same {
            report.locality_premises += 1;
            if !exceeds(f_yx, f_y) {
                report.locality.push(record);
            }
        }
    }
    Ok(report)
}

/// Greedily drops elements of `y` while the value stays at `f_y`.
fn minimal_equal_subset(
    y: &[usize],
    f_y: f64,
    f: &impl Fn(&[usize]) -> Result<f64, SolveError>,
) -> Result<Vec<usize>, SolveError> {
    let mut cur = y.to_vec();
    let mut i = 0;
    while i < cur.len() && cur.len() > 1 {
        let mut trial = cur.clone();
        trial.remove(i);
        if !exceeds(f_y, f(&trial)?) {
            cur = trial;
        } else {
            i += 1;
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
        Segment::new(Point::new(ax, ay), Point::new(bx, by)).unwrap()
    }

    #[test]
    fn mtb_small_examples() {
        assert_eq!(mtb_small(&[]), Ball::new(Point::default(), 0.0));
        assert_eq!(mtb_small(&[seg(0.0, 0.0, 2.0, 4.0)]), Ball::new(Point::new(1.0, 2.0), 0.0));
        let par = mtb_small(&[seg(0.0, 0.0, 1.0, 0.0), seg(0.0, 2.0, 1.0, 2.0)]);
        assert!((par.radius - 1.0).abs() < 1e-12);
        let cross = mtb_small(&[seg(0.0, 0.0, 2.0, 2.0), seg(0.0, 2.0, 2.0, 0.0)]);
        assert!(cross.radius < 1e-12);
        assert!(cross.center.dist(Point::new(1.0, 1.0)) < 1e-12);
    }

    #[test]
    fn violates_examples() {
        let ball = Ball::new(Point::new(0.0, 0.0), 1.0);
        assert!(!violates(&ball, &seg(-1.0, -1.0, 1.0, 1.0)));
        assert!(violates(&ball, &seg(-1.0, 2.0, 1.0, 2.0)));
        // Tangent at angle 0.7: the line through (cos, sin) along the tangent.
        let (s, c) = 0.7f64.sin_cos();
        let foot = Point::new(c, s);
        let tangent = Point::new(-s, c);
        let t = Segment::new(foot - tangent * 3.0, foot + tangent * 2.0).unwrap();
        assert!((dist_point_segment(ball.center, &t) - 1.0).abs() < 1e-15);
        assert!(!violates(&ball, &t));
    }

    #[test]
    fn lp_small_examples() {
        let one = lp_segment_mtb(&[seg(0.0, 0.0, 1.0, 1.0)], 7).unwrap();
        assert_eq!(one.radius, 0.0);
        let par = lp_segment_mtb(&[seg(0.0, 0.0, 1.0, 0.0), seg(0.0, 2.0, 1.0, 2.0)], 3).unwrap();
        assert!((par.radius - 1.0).abs() < 1e-12);
        assert_eq!(lp_segment_mtb(&[], 1), Err(SolveError::EmptyInput));
    }

    #[test]
    fn lp_matches_exact_on_random_segments() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let segs: Vec<Segment> = (0..50)
            .map(|_| {
                let a = Point::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
                let b = Point::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
                Segment::new(a, b).unwrap()
            })
            .collect();
        let sol = lp_segment_solve(&segs, 5).unwrap();
        let exact = exact_tmtb(&segment_set(&segs)).unwrap();
        assert!((sol.ball.radius - exact.radius).abs() <= 1e-6, "{} vs {}", sol.ball.radius, exact.radius);
        assert!(sol.basis.segments.len() <= MAX_BASIS);
        assert!(segs.iter().all(|s| !violates(&sol.ball, s)));
    }

    #[test]
    fn single_segments_rejects_polylines() {
        let set = TrajectorySet::new(vec![
            Trajectory::from_coords(&[(0.0, 0.0), (1.0, 0.0)]).unwrap(),
            Trajectory::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            single_segments(&set),
            Err(SolveError::NotSingleSegment { index: 1, segments: 2 })
        );
    }

    #[test]
    fn axiom_probe_singleton_is_clean() {
        let set = TrajectorySet::new(vec![Trajectory::from_coords(&[(0.0, 0.0), (1.0, 0.0)]).unwrap()]).unwrap();
        let report = axiom_probe(&set, 10, 1).unwrap();
        assert!(report.is_clean());
    }

    #[test]
    fn subsets_enumerate_combinations() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }
}
