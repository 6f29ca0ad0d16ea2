//! Instance generators: the k = 4 configuration with no redundant trajectory,
//! and seeded random instances for tests and benchmarks.

use rand::Rng;

use crate::error::SolveError;
use crate::exact::{essentiality_check, Essentiality};
use crate::geom::{Point, Trajectory, TrajectorySet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonsterConfig {
    n: usize,
}

impl MonsterConfig {
    pub fn new(n: usize) -> Result<Self, SolveError> {
        if n > 4 {
            Ok(Self { n })
        } else {
            Err(SolveError::ConstructionTooSmall(n))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn build(&self) -> TrajectorySet {
        let n = self.n as f64;
        let end = n + 2.5;
        let mut ts = vec![
            Trajectory::from_coords(&[(0.0, 0.0), (end, -0.5)]),
            Trajectory::from_coords(&[(0.0, 4.0), (3.5, 1.0), (end, 1.0)]),
        ];
        for i in 2..self.n {
            let x = i as f64;
            ts.push(Trajectory::from_coords(&[
                (0.0, 1.0),
                (x, 1.0),
                (x + 1.25, 4.0),
                (x + 2.5, 1.0),
                (end, 1.0),
            ]));
        }
        let ts = ts.into_iter().collect::<Result<Vec<_>, _>>().expect("construction is valid");
        TrajectorySet::new(ts).expect("non-empty")
    }
}

/// `n` trajectories where removing any single one shrinks the minimum
/// touching ball: a slanted segment, a descending ramp, and `n - 2` arches.
pub fn lp_monster(n: usize) -> Result<TrajectorySet, SolveError> {
    Ok(MonsterConfig::new(n)?.build())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonsterReport {
    pub n: usize,
    pub full_radius: f64,
    pub removals: Vec<Essentiality>,
}

impl MonsterReport {
    pub fn all_essential(&self) -> bool {
        self.removals.iter().all(|e| e.essential)
    }
}

/// Leave-one-out exact solves over [`lp_monster`].
pub fn monster_removals(n: usize) -> Result<MonsterReport, SolveError> {
    let set = lp_monster(n)?;
    let removals = essentiality_check(&set)?;
    Ok(MonsterReport {
        n,
        full_radius: removals[0].full_radius,
        removals,
    })
}

/// A trajectory of `k` segments with waypoints uniform in `[0, extent]²`.
pub fn random_trajectory(rng: &mut impl Rng, k: usize, extent: f64) -> Trajectory {
    let mut pts: Vec<Point> = Vec::with_capacity(k + 1);
    while pts.len() <= k {
        let p = Point::new(rng.gen_range(0.0..extent), rng.gen_range(0.0..extent));
        if pts.last().map_or(true, |q| q.dist(p) > 1e-6) {
            pts.push(p);
        }
    }
    Trajectory::new(pts).expect("distinct finite waypoints")
}

/// `n` trajectories of `k` segments each, waypoints uniform in `[0, extent]²`.
pub fn random_set(rng: &mut impl Rng, n: usize, k: usize, extent: f64) -> TrajectorySet {
    let ts = (0..n.max(1)).map(|_| random_trajectory(rng, k, extent)).collect();
    TrajectorySet::new(ts).expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monster_seven() {
        let set = lp_monster(7).unwrap();
        assert_eq!(set.len(), 7);
        let t0 = set.get(0).unwrap().waypoints();
        assert_eq!(t0, &[Point::new(0.0, 0.0), Point::new(9.5, -0.5)]);
        let t2 = set.get(2).unwrap().waypoints();
        let want: Vec<Point> = [(0.0, 1.0), (2.0, 1.0), (3.25, 4.0), (4.5, 1.0), (9.5, 1.0)]
            .iter()
            .map(|&(x, y)| Point::new(x, y))
            .collect();
        assert_eq!(t2, want.as_slice());
        let counts: Vec<usize> = set.iter().map(Trajectory::num_segments).collect();
        assert_eq!(counts, vec![1, 2, 4, 4, 4, 4, 4]);
        for arch in &set.trajectories()[2..] {
            let ys: Vec<f64> = arch.waypoints().iter().map(|p| p.y).collect();
            assert_eq!(ys.iter().cloned().fold(f64::INFINITY, f64::min), 1.0);
            assert_eq!(ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max), 4.0);
        }
    }

    #[test]
    fn monster_rejects_small_n() {
        assert_eq!(lp_monster(4), Err(SolveError::ConstructionTooSmall(4)));
        assert!(lp_monster(0).is_err());
    }

    #[test]
    fn random_sets_are_seeded() {
        let a = random_set(&mut ChaCha8Rng::seed_from_u64(5), 3, 2, 10.0);
        let b = random_set(&mut ChaCha8Rng::seed_from_u64(5), 3, 2, 10.0);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(|t| t.num_segments() == 2));
    }
}
