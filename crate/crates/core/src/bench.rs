//! Wall-time harness: median solve time per (solver, n) over seeded random
//! instances.

use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::approx::estimate_tmtb;
use crate::constructions::random_set;
use crate::error::SolveError;
use crate::exact::exact_tmtb;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchSolver {
    Approx,
    Exact,
}

impl fmt::Display for BenchSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchSolver::Approx => "approx",
            BenchSolver::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    pub k: usize,
    pub eps: f64,
    pub rho: f64,
    pub seeds: Vec<u64>,
    pub solvers: Vec<BenchSolver>,
    pub extent: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            ns: vec![25, 50, 100],
            k: 3,
            eps: 0.25,
            rho: 1e-6,
            seeds: vec![1, 2, 3],
            solvers: vec![BenchSolver::Approx, BenchSolver::Exact],
            extent: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub solver: BenchSolver,
    pub n: usize,
    pub k: usize,
    pub eps: f64,
    pub median_s: f64,
    pub runs: usize,
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    assert!(!xs.is_empty(), "median of nothing");
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, SolveError> {
    if cfg.seeds.is_empty() {
        return Err(SolveError::InvalidParameter("bench needs at least one seed".into()));
    }
    let mut rows = Vec::new();
    for &solver in &cfg.solvers {
        for &n in &cfg.ns {
            let mut times = Vec::with_capacity(cfg.seeds.len());
            for &seed in &cfg.seeds {
                let set = random_set(&mut ChaCha8Rng::seed_from_u64(seed), n, cfg.k, cfg.extent);
                let start = Instant::now();
                match solver {
                    BenchSolver::Approx => {
                        estimate_tmtb(&set, cfg.eps, cfg.rho)?;
                    }
                    BenchSolver::Exact => {
                        exact_tmtb(&set)?;
                    }
                }
                times.push(start.elapsed().as_secs_f64());
            }
            rows.push(BenchRow {
                solver,
                n,
                k: cfg.k,
                eps: cfg.eps,
                median_s: median(times),
                runs: cfg.seeds.len(),
            });
        }
    }
    Ok(rows)
}

/// Aligned columns, one row per configuration.
pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = format!("{:<8} {:>6} {:>3} {:>6} {:>5} {:>12}\n", "solver", "n", "k", "eps", "runs", "median_s");
    for r in rows {
        out.push_str(&format!(
            "{:<8} {:>6} {:>3} {:>6} {:>5} {:>12.6}\n",
            r.solver.to_string(),
            r.n,
            r.k,
            r.eps,
            r.runs,
            r.median_s
        ));
    }
    out
}
