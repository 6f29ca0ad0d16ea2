//! Randomized invariants. Expected values come from brute-force sampling or
//! from a second solver, never from the code under test.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tmtb_core::approx::{
    estimate_rad, estimate_tmtb, feasible_intersection, ghost_trajectories, interval_within, sausage_contains,
    GhostSet, ParamInterval,
};
use tmtb_core::constructions::{random_set, random_trajectory};
use tmtb_core::exact::exact_tmtb;
use tmtb_core::geom::{
    closest_on_segment, diameter_2approx, dist_point_segment, dist_point_trajectory, touching_radius, Point, Segment,
    Trajectory, TrajectorySet,
};
use tmtb_core::io::{format_trajectories, parse_trajectories};
use tmtb_core::lp::{lp_segment_solve, mtb_small, single_segments, violates, MAX_BASIS};

fn coord() -> impl Strategy<Value = f64> {
    -50.0..50.0f64
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn segment() -> impl Strategy<Value = Segment> {
    (point(), point())
        .prop_filter("distinct endpoints", |(a, b)| a.dist(*b) > 1e-6)
        .prop_map(|(a, b)| Segment::new(a, b).unwrap())
}

/// Random set with `n` and `k` drawn from the ranges, from a seed.
fn set_from(seed: u64, n: (usize, usize), k: (usize, usize)) -> TrajectorySet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(n.0..=n.1);
    let k = rng.gen_range(k.0..=k.1);
    random_set(&mut rng, n, k, 10.0)
}

/// Brute-force distance by sampling the segment densely.
fn sampled_dist(p: Point, s: &Segment) -> f64 {
    (0..=20_000)
        .map(|i| p.dist(s.at(i as f64 / 20_000.0)))
        .fold(f64::INFINITY, f64::min)
}

/// Brute-force minimum of the touching radius along a trajectory.
fn sampled_min_along(t: &Trajectory, set: &TrajectorySet, steps: usize) -> f64 {
    if t.num_segments() == 0 {
        return touching_radius(t.first(), set);
    }
    t.segments()
        .flat_map(|s| (0..=steps).map(move |i| s.at(i as f64 / steps as f64)))
        .map(|c| touching_radius(c, set))
        .fold(f64::INFINITY, f64::min)
}

fn all_endpoint_diameter(set: &TrajectorySet) -> f64 {
    let pts: Vec<Point> = set.waypoints().collect();
    let mut d: f64 = 0.0;
    for a in &pts {
        for b in &pts {
            d = d.max(a.dist(*b));
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn segment_distance_bounds(p in point(), s in segment()) {
        let d = dist_point_segment(p, &s);
        prop_assert!(d >= 0.0);
        prop_assert!(d <= p.dist(s.a).min(p.dist(s.b)) * (1.0 + 1e-15));
        let sampled = sampled_dist(p, &s);
        prop_assert!(d <= sampled + 1e-12);
        prop_assert!(sampled - d <= s.len() / 20_000.0 + 1e-9);
    }

    #[test]
    fn closest_parameter_realizes_distance(p in point(), s in segment()) {
        let (d, lambda) = closest_on_segment(p, &s);
        prop_assert!((0.0..=1.0).contains(&lambda));
        let via = p.dist(s.at(lambda));
        prop_assert!((via - d).abs() <= 1e-12 * d.max(1.0));
    }

    #[test]
    fn trajectory_distance_is_lipschitz(seed in any::<u64>(), p in point(), q in point()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..5);
        let t = random_trajectory(&mut rng, k, 10.0);
        let (dp, dq) = (dist_point_trajectory(p, &t), dist_point_trajectory(q, &t));
        prop_assert!((dp - dq).abs() <= p.dist(q) + 1e-9);
    }

    #[test]
    fn radius_convex_for_single_segments(seed in any::<u64>(), a in point(), b in point()) {
        let set = set_from(seed, (1, 6), (1, 1));
        let m = a.midpoint(b);
        let lhs = touching_radius(m, &set);
        let rhs = 0.5 * (touching_radius(a, &set) + touching_radius(b, &set));
        prop_assert!(lhs <= rhs + 1e-9);
    }

    #[test]
    fn diameter_estimate_within_factor_two(seed in any::<u64>()) {
        let set = set_from(seed, (1, 8), (0, 4));
        let est = diameter_2approx(&set);
        let d = all_endpoint_diameter(&set);
        prop_assert!(est <= d + 1e-12 && d <= 2.0 * est + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_ball_is_valid_and_beats_samples(seed in any::<u64>()) {
        let set = set_from(seed, (2, 5), (0, 3));
        let b = exact_tmtb(&set).unwrap();
        prop_assert!((touching_radius(b.center, &set) - b.radius).abs() <= 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..300 {
            let c = Point::new(rng.gen_range(-2.0..12.0), rng.gen_range(-2.0..12.0));
            prop_assert!(b.radius <= touching_radius(c, &set) + 1e-9);
        }
    }

    #[test]
    fn exact_monotone_in_subsets(seed in any::<u64>()) {
        let set = set_from(seed, (2, 6), (1, 3));
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
        let ids: Vec<usize> = (0..set.len()).filter(|_| rng.gen_bool(0.6)).collect();
        prop_assume!(!ids.is_empty());
        let sub = exact_tmtb(&set.subset(&ids).unwrap()).unwrap().radius;
        let full = exact_tmtb(&set).unwrap().radius;
        prop_assert!(sub <= full + 1e-9);
    }

    #[test]
    fn exact_invariant_under_rigid_motion(seed in any::<u64>(), angle in 0.0..std::f64::consts::TAU, dx in coord(), dy in coord()) {
        let set = set_from(seed, (2, 5), (1, 3));
        let moved = TrajectorySet::new(
            set.iter()
                .map(|t| {
                    Trajectory::new(
                        t.waypoints().iter().map(|p| p.rotate(angle) + Point::new(dx, dy)).collect(),
                    )
                    .unwrap()
                })
                .collect(),
        )
        .unwrap();
        let (a, b) = (exact_tmtb(&set).unwrap().radius, exact_tmtb(&moved).unwrap().radius);
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn lp_matches_exact_and_its_basis(seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let set = set_from(seed, (2, 12), (1, 1));
        let segs = single_segments(&set).unwrap();
        let a = lp_segment_solve(&segs, s1).unwrap();
        let b = lp_segment_solve(&segs, s2).unwrap();
        let exact = exact_tmtb(&set).unwrap().radius;
        prop_assert!((a.ball.radius - exact).abs() <= 1e-6);
        prop_assert!((a.ball.radius - b.ball.radius).abs() <= 1e-9 * exact.max(1e-3));
        prop_assert!(a.basis.segments.len() <= MAX_BASIS);
        let again = mtb_small(&a.basis.segments);
        prop_assert!((again.radius - a.ball.radius).abs() <= 1e-9 * exact.max(1.0));
        prop_assert!(segs.iter().all(|s| !violates(&a.ball, s)));
    }

    #[test]
    fn estimate_rad_witness_and_sandwich(seed in any::<u64>()) {
        let set = set_from(seed, (2, 5), (1, 3));
        let gamma = 2.0;
        let tau0 = 2.0 * diameter_2approx(&set);
        let src = &set.trajectories()[..1];
        let est = estimate_rad(&set, src, Some(0), gamma, 1e-9, tau0).unwrap();
        prop_assert!((touching_radius(est.ball.center, &set) - est.ball.radius).abs() <= 1e-12);
        prop_assert!(est.ball.radius <= gamma * est.tau_final + 1e-9);
        let oracle = sampled_min_along(&src[0], &set, 2000);
        // Sampling overestimates the restricted minimum slightly.
        prop_assert!(est.tau_final / gamma <= oracle + 1e-9);
        prop_assert!(oracle - 0.01 <= gamma * est.tau_final);
    }

    #[test]
    fn estimate_tmtb_never_below_optimum(seed in any::<u64>(), eps in 0.05..=0.5f64) {
        let set = set_from(seed, (2, 5), (0, 3));
        let exact = exact_tmtb(&set).unwrap().radius;
        let b = estimate_tmtb(&set, eps, 1e-6).unwrap();
        prop_assert!(b.radius >= exact - 1e-9);
        prop_assert!(b.radius <= (1.0 + eps) * exact.max(1e-6) + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn feasibility_is_monotone_in_tau(seed in any::<u64>(), s in segment(), tau in 0.1..20.0f64, grow in 0.0..5.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..4);
        let t = random_trajectory(&mut rng, k, 40.0);
        let small = interval_within(&s, &t, tau);
        let big = interval_within(&s, &t, tau + grow);
        for iv in &small {
            for lambda in [iv.lo, 0.5 * (iv.lo + iv.hi), iv.hi] {
                prop_assert!(big.iter().any(|b| b.lo - 1e-9 <= lambda && lambda <= b.hi + 1e-9));
            }
        }
    }

    #[test]
    fn interval_within_matches_sampling(seed in any::<u64>(), s in segment(), tau in 0.5..20.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..4);
        let t = random_trajectory(&mut rng, k, 40.0);
        let got = interval_within(&s, &t, tau);
        let slack = 1e-9 * (1.0 + tau);
        for i in 0..=1000 {
            let lambda = i as f64 / 1000.0;
            let d = dist_point_trajectory(s.at(lambda), &t);
            let inside = got.iter().any(|iv| iv.contains(lambda));
            if d < tau - slack {
                prop_assert!(inside, "lambda {} at distance {} < {}", lambda, d, tau);
            } else if d > tau + slack {
                prop_assert!(!inside, "lambda {} at distance {} > {}", lambda, d, tau);
            }
        }
    }

    #[test]
    fn intersection_is_sorted_disjoint_subset(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists: Vec<Vec<ParamInterval>> = (0..rng.gen_range(1..5))
            .map(|_| {
                (0..rng.gen_range(1..4))
                    .map(|_| {
                        let (a, b): (f64, f64) = (rng.gen(), rng.gen());
                        ParamInterval::new(a.min(b), a.max(b))
                    })
                    .collect()
            })
            .collect();
        let got = feasible_intersection(&lists);
        prop_assert!(got.windows(2).all(|w| w[0].hi < w[1].lo));
        for iv in &got {
            for lambda in [iv.lo, iv.hi] {
                prop_assert!(lists.iter().all(|l| l.iter().any(|x| x.contains(lambda))));
            }
        }
        let mut rev = lists.clone();
        rev.reverse();
        prop_assert_eq!(feasible_intersection(&rev), got);
    }

    #[test]
    fn ghosts_inside_sausage(seed in any::<u64>(), tau in 0.05..5.0f64, eps in 0.05..=0.5f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..5);
        let t = random_trajectory(&mut rng, k, 10.0);
        let g = ghost_trajectories(&t, tau, eps).unwrap();
        prop_assert!(g.trajectories.len() <= 2 * GhostSet::count_per_side(eps) + 1);
        prop_assert!(g.spacing <= tau * eps / 12.0 * (1.0 + 1e-12));
        for ghost in &g.trajectories {
            for s in ghost.segments() {
                for i in 0..=8 {
                    prop_assert!(sausage_contains(&t, tau, s.at(i as f64 / 8.0)));
                }
            }
        }
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..6);
        let ts: Vec<Trajectory> = (0..n)
            .map(|_| {
                let k = rng.gen_range(0..4);
                let pts: Vec<Point> = (0..=k)
                    .map(|_| Point::new(rng.gen_range(-1e6..1e6) * rng.gen::<f64>(), rng.gen::<f64>() - 0.5))
                    .collect();
                Trajectory::new(pts).unwrap()
            })
            .collect();
        let set = TrajectorySet::new(ts).unwrap();
        prop_assert_eq!(parse_trajectories(&format_trajectories(&set)).unwrap().set, set);
    }
}

#[test]
fn lp_violation_tests_grow_linearly() {
    let mean_tests = |n: usize| -> f64 {
        let mut total = 0usize;
        for seed in 0..20u64 {
            let set = random_set(&mut ChaCha8Rng::seed_from_u64(1000 + seed), n, 1, 10.0);
            let segs = single_segments(&set).unwrap();
            total += lp_segment_solve(&segs, seed).unwrap().violation_tests;
        }
        total as f64 / 20.0
    };
    let (small, large) = (mean_tests(30), mean_tests(60));
    assert!(large <= 3.0 * small, "{small} -> {large}");
}
