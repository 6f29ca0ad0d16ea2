//! Uniform-grid baseline.
//!
//! The returned point is the grid minimizer of the touching radius under the
//! `(radius, x, y)` order, identical to a full row-major scan. Blocks of grid
//! points are skipped only when the 1-Lipschitz bound proves every point in
//! them is strictly worse than the current best.

use std::cmp::Ordering;

use crate::error::SolveError;
use crate::geom::{diameter_2approx, touching_radius, touching_radius_within, Ball, Point, Rect, TrajectorySet};

/// Largest number of grid points evaluated.
pub const MAX_GRID_POINTS: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub width: f64,
    pub bounds: Rect,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// Grid over the waypoint bounding box expanded by the diameter estimate.
    pub fn for_set(set: &TrajectorySet, width: f64) -> Result<GridSpec, SolveError> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(SolveError::InvalidParameter(format!("grid width = {width} must be positive")));
        }
        let bounds = set.bounds().expanded(diameter_2approx(set));
        let cx = (bounds.width() / width).ceil() + 1.0;
        let cy = (bounds.height() / width).ceil() + 1.0;
        let points = cx * cy;
        if points > MAX_GRID_POINTS {
            return Err(SolveError::GridTooLarge {
                points,
                limit: MAX_GRID_POINTS,
            });
        }
        Ok(GridSpec {
            width,
            bounds,
            nx: cx as usize,
            ny: cy as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize, j: usize) -> Point {
        Point::new(
            self.bounds.min.x + i as f64 * self.width,
            self.bounds.min.y + j as f64 * self.width,
        )
    }
}

#[derive(Clone, Copy)]
struct Best {
    radius: f64,
    center: Point,
}

impl Best {
    fn better(&self, radius: f64, center: Point) -> bool {
        match radius.total_cmp(&self.radius) {
            Ordering::Less => true,
            Ordering::Equal => center.lex_cmp(&self.center) == Ordering::Less,
            Ordering::Greater => false,
        }
    }
}

/// Grid point minimizing the touching radius.
pub fn grid_tmtb(set: &TrajectorySet, width: f64) -> Result<Ball, SolveError> {
    let spec = GridSpec::for_set(set, width)?;
    let first = spec.point(0, 0);
    let mut best = Best {
        radius: touching_radius(first, set),
        center: first,
    };
    search(set, &spec, (0, spec.nx), (0, spec.ny), &mut best);
    Ok(Ball::new(best.center, best.radius))
}

/// Plain row-major scan of every grid point; reference for [`grid_tmtb`].
pub fn grid_tmtb_exhaustive(set: &TrajectorySet, width: f64) -> Result<Ball, SolveError> {
    let spec = GridSpec::for_set(set, width)?;
    let mut best: Option<Best> = None;
    for j in 0..spec.ny {
        for i in 0..spec.nx {
            let c = spec.point(i, j);
            let r = touching_radius(c, set);
            if best.map_or(true, |b| b.better(r, c)) {
                best = Some(Best { radius: r, center: c });
            }
        }
    }
    let b = best.expect("grid has at least one point");
    Ok(Ball::new(b.center, b.radius))
}

const LEAF: usize = 64;

/// Geometric center of the block and the distance to its farthest corner.
fn block_disc(spec: &GridSpec, xs: (usize, usize), ys: (usize, usize)) -> (Point, f64) {
    let lo = spec.point(xs.0, ys.0);
    let hi = spec.point(xs.1 - 1, ys.1 - 1);
    let c = lo.midpoint(hi);
    (c, 0.5 * lo.dist(hi))
}

fn lower_bound(set: &TrajectorySet, spec: &GridSpec, xs: (usize, usize), ys: (usize, usize)) -> f64 {
    let (c, half) = block_disc(spec, xs, ys);
    touching_radius(c, set) - half
}

// Slack on the pruning bound so float noise never drops a tied point.
fn prunable(bound: f64, best: f64) -> bool {
    bound > best + 1e-9 * best.abs().max(1.0)
}

fn search(set: &TrajectorySet, spec: &GridSpec, xs: (usize, usize), ys: (usize, usize), best: &mut Best) {
    let (w, h) = (xs.1 - xs.0, ys.1 - ys.0);
    if w * h <= LEAF {
        for j in ys.0..ys.1 {
            for i in xs.0..xs.1 {
                let c = spec.point(i, j);
                if let Some(r) = touching_radius_within(c, set, best.radius) {
                    if best.better(r, c) {
                        *best = Best { radius: r, center: c };
                    }
                }
            }
        }
        return;
    }
    let mut parts: Vec<((usize, usize), (usize, usize))> = Vec::with_capacity(4);
    let xm = xs.0 + w / 2;
    let ym = ys.0 + h / 2;
    let xsplit: Vec<(usize, usize)> = if w > 1 { vec![(xs.0, xm), (xm, xs.1)] } else { vec![xs] };
    let ysplit: Vec<(usize, usize)> = if h > 1 { vec![(ys.0, ym), (ym, ys.1)] } else { vec![ys] };
    for &x in &xsplit {
        for &y in &ysplit {
            parts.push((x, y));
        }
    }
    let mut scored: Vec<(f64, (usize, usize), (usize, usize))> = parts
        .into_iter()
        .map(|(x, y)| (lower_bound(set, spec, x, y), x, y))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (bound, x, y) in scored {
        if prunable(bound, best.radius) {
            continue;
        }
        search(set, spec, x, y, best);
    }
}
