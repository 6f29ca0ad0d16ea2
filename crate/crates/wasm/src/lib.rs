//! Browser bindings: each call parses or builds an instance, solves it and
//! returns the figure as SVG together with the ball.

use wasm_bindgen::prelude::*;

use tmtb_core::approx::estimate_tmtb_detailed;
use tmtb_core::constructions::lp_monster;
use tmtb_core::exact::exact_tmtb;
use tmtb_core::io::{format_trajectories, parse_trajectories, render_svg, SvgOptions};
use tmtb_core::{Ball, TrajectorySet};

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    ball: Ball,
    trajectories: usize,
    ghosts: usize,
    svg: String,
}

#[wasm_bindgen]
impl Solution {
    #[wasm_bindgen(getter)]
    pub fn center_x(&self) -> f64 {
        self.ball.center.x + 0.0
    }

    #[wasm_bindgen(getter)]
    pub fn center_y(&self) -> f64 {
        self.ball.center.y + 0.0
    }

    #[wasm_bindgen(getter)]
    pub fn radius(&self) -> f64 {
        self.ball.radius
    }

    #[wasm_bindgen(getter)]
    pub fn trajectories(&self) -> usize {
        self.trajectories
    }

    /// Number of ghost trajectories drawn (approximation only).
    #[wasm_bindgen(getter)]
    pub fn ghosts(&self) -> usize {
        self.ghosts
    }

    #[wasm_bindgen(getter)]
    pub fn svg(&self) -> String {
        self.svg.clone()
    }
}

fn options(raise: bool) -> SvgOptions {
    SvgOptions {
        width_px: 640.0,
        raise_overlaps: raise,
    }
}

fn parse(text: &str) -> Result<TrajectorySet, String> {
    parse_trajectories(text).map(|p| p.set).map_err(|e| format!("line {e}"))
}

pub fn exact_impl(text: &str, raise: bool) -> Result<Solution, String> {
    let set = parse(text)?;
    let ball = exact_tmtb(&set).map_err(|e| e.to_string())?;
    Ok(Solution {
        svg: render_svg(&set, Some(&ball), None, &options(raise)),
        ball,
        trajectories: set.len(),
        ghosts: 0,
    })
}

pub fn approx_impl(text: &str, eps: f64, rho: f64, show_ghosts: bool) -> Result<Solution, String> {
    let set = parse(text)?;
    let est = estimate_tmtb_detailed(&set, eps, rho).map_err(|e| e.to_string())?;
    let ghosts = est.ghosts.as_ref().filter(|_| show_ghosts);
    Ok(Solution {
        svg: render_svg(&set, Some(&est.ball), ghosts, &options(false)),
        ball: est.ball,
        trajectories: set.len(),
        ghosts: ghosts.map_or(0, |g| g.trajectories.len()),
    })
}

/// Exact ball of the k = 4 configuration, optionally with one trajectory
/// left out.
pub fn monster_impl(n: usize, remove: Option<usize>, raise: bool) -> Result<Solution, String> {
    let full = lp_monster(n).map_err(|e| e.to_string())?;
    let set = match remove {
        Some(i) => full
            .without(i)
            .ok_or_else(|| format!("no trajectory {i} among {n}"))?,
        None => full,
    };
    let ball = exact_tmtb(&set).map_err(|e| e.to_string())?;
    Ok(Solution {
        svg: render_svg(&set, Some(&ball), None, &options(raise)),
        ball,
        trajectories: set.len(),
        ghosts: 0,
    })
}

pub fn monster_text_impl(n: usize) -> Result<String, String> {
    lp_monster(n).map(|s| format_trajectories(&s)).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn solve_exact(text: &str, raise_overlaps: bool) -> Result<Solution, JsError> {
    exact_impl(text, raise_overlaps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve_approx(text: &str, eps: f64, rho: f64, show_ghosts: bool) -> Result<Solution, JsError> {
    approx_impl(text, eps, rho, show_ghosts).map_err(|e| JsError::new(&e))
}

/// `remove` < 0 keeps every trajectory.
#[wasm_bindgen]
pub fn solve_monster(n: usize, remove: i32, raise_overlaps: bool) -> Result<Solution, JsError> {
    let remove = usize::try_from(remove).ok();
    monster_impl(n, remove, raise_overlaps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn monster_text(n: usize) -> Result<String, JsError> {
    monster_text_impl(n).map_err(|e| JsError::new(&e))
}
