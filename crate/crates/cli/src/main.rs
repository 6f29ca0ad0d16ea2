use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use tmtb_core::approx::estimate_tmtb_detailed;
use tmtb_core::bench::{format_table, run_bench, BenchConfig, BenchSolver};
use tmtb_core::constructions::lp_monster;
use tmtb_core::exact::exact_tmtb;
use tmtb_core::io::{format_trajectories, parse_trajectories, render_svg, ResultRecord, RunParams, SvgOptions};
use tmtb_core::lp::{lp_segment_mtb, single_segments};
use tmtb_core::oracle::grid_tmtb;
use tmtb_core::{Ball, GhostSet, SolveError, TrajectorySet};

#[derive(Parser)]
#[command(name = "tmtb", version, about = "Minimum touching balls of planar trajectories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact solver (candidate enumeration).
    Exact(Common),
    /// Randomized LP-type solver; every trajectory must be a single segment.
    Lp {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// (eps, rho)-approximation.
    Approx {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 0.0)]
        rho: f64,
    },
    /// Uniform grid baseline.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.01)]
        grid_width: f64,
    },
    /// Write the k = 4 configuration in which every trajectory is essential.
    GenMonster {
        #[arg(long)]
        n: usize,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a trajectory file, optionally with its exact ball.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        svg_out: Option<PathBuf>,
        #[arg(long)]
        raise_overlaps: bool,
        /// Overlay the exact minimum touching ball.
        #[arg(long)]
        solve: bool,
    },
    /// Median wall time over seeded random instances.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [25usize, 50, 100])]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value_t = 1e-6)]
        rho: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 3])]
        seeds: Vec<u64>,
        /// Also time the exact solver (cubic in the number of segments).
        #[arg(long)]
        with_exact: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    input: PathBuf,
    /// Append the result as one JSON line.
    #[arg(long)]
    record: Option<PathBuf>,
    #[arg(long)]
    svg_out: Option<PathBuf>,
    #[arg(long)]
    raise_overlaps: bool,
}

enum Failure {
    Usage(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::InvalidParameter(_) | SolveError::GridTooLarge { .. } | SolveError::ConstructionTooSmall(_) => {
                Failure::Usage(e.to_string())
            }
            SolveError::Geom(_) | SolveError::EmptyInput => Failure::Input(e.to_string()),
            SolveError::BasisCycling { .. } | SolveError::NotSingleSegment { .. } => Failure::Internal(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("tmtb: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn load(path: &Path) -> Result<TrajectorySet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let parsed = parse_trajectories(&text).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.set)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn finish(
    solver: &str,
    common: &Common,
    set: &TrajectorySet,
    ball: &Ball,
    ghosts: Option<&GhostSet>,
    started: Instant,
    params: RunParams,
) -> Result<(), Failure> {
    let record = ResultRecord::new(solver, ball, set, started.elapsed().as_secs_f64(), params);
    println!("{record}");
    if let Some(path) = &common.record {
        let line = serde_json::to_string(&record).map_err(|e| Failure::Internal(e.to_string()))?;
        let mut f = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        writeln!(f, "{line}").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &common.svg_out {
        let opts = SvgOptions {
            raise_overlaps: common.raise_overlaps,
            ..SvgOptions::default()
        };
        write_file(path, &render_svg(set, Some(ball), ghosts, &opts))?;
    }
    if !record.is_consistent() {
        return Err(Failure::Internal(format!(
            "residual {} exceeds radius {}",
            record.max_residual(),
            record.radius
        )));
    }
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Exact(common) => {
            let set = load(&common.input)?;
            let t = Instant::now();
            let ball = exact_tmtb(&set)?;
            finish("exact", &common, &set, &ball, None, t, RunParams::default())
        }
        Command::Lp { common, seed } => {
            let set = load(&common.input)?;
            let segs = single_segments(&set).map_err(|e| match e {
                SolveError::NotSingleSegment { index, segments } => Failure::Usage(format!(
                    "lp needs every trajectory to be one segment, but trajectory {index} has {segments}; \
                     with multi-segment trajectories the combinatorial dimension is unbounded, so use `exact` or `approx`"
                )),
                other => other.into(),
            })?;
            let t = Instant::now();
            let ball = lp_segment_mtb(&segs, seed)?;
            let params = RunParams {
                seed: Some(seed),
                ..RunParams::default()
            };
            finish("lp", &common, &set, &ball, None, t, params)
        }
        Command::Approx { common, eps, rho } => {
            let set = load(&common.input)?;
            let t = Instant::now();
            let est = estimate_tmtb_detailed(&set, eps, rho)?;
            let params = RunParams {
                eps: Some(eps),
                rho: Some(rho),
                ..RunParams::default()
            };
            finish("approx", &common, &set, &est.ball, est.ghosts.as_ref(), t, params)
        }
        Command::Oracle { common, grid_width } => {
            let set = load(&common.input)?;
            let t = Instant::now();
            let ball = grid_tmtb(&set, grid_width)?;
            let params = RunParams {
                grid_width: Some(grid_width),
                ..RunParams::default()
            };
            finish("oracle", &common, &set, &ball, None, t, params)
        }
        Command::GenMonster { n, out } => {
            let text = format_trajectories(&lp_monster(n)?);
            match out {
                Some(path) => write_file(&path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Render {
            input,
            svg_out,
            raise_overlaps,
            solve,
        } => {
            let set = load(&input)?;
            let ball = if solve { Some(exact_tmtb(&set)?) } else { None };
            let opts = SvgOptions {
                raise_overlaps,
                ..SvgOptions::default()
            };
            let svg = render_svg(&set, ball.as_ref(), None, &opts);
            match svg_out {
                Some(path) => write_file(&path, &svg),
                None => {
                    print!("{svg}");
                    Ok(())
                }
            }
        }
        Command::Bench {
            ns,
            k,
            eps,
            rho,
            seeds,
            with_exact,
        } => {
            let mut solvers = vec![BenchSolver::Approx];
            if with_exact {
                solvers.push(BenchSolver::Exact);
            }
            let cfg = BenchConfig {
                ns,
                k,
                eps,
                rho,
                seeds,
                solvers,
                ..BenchConfig::default()
            };
            print!("{}", format_table(&run_bench(&cfg)?));
            Ok(())
        }
    }
}
