//! Trajectory text format, result records and SVG figures.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! version 1
//! 0,0 4,4 5,0
//! 2,-1 2,6
//! ```
//!
//! An optional `version` line may precede the trajectories. Every other
//! non-blank line is one trajectory, its waypoints written `x,y` and
//! separated by whitespace. `#` starts a comment anywhere on a line.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::approx::GhostSet;
use crate::geom::{
    dist_point_trajectory, segment_segment_intersection, Ball, Point, Rect, SegmentIntersection, Trajectory,
    TrajectorySet, TOL_PT,
};

pub const FORMAT_VERSION: u32 = 1;

/// A located parse failure; line and column are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub set: TrajectorySet,
    pub version: u32,
    /// Adjacent duplicate waypoints that were dropped.
    pub warnings: Vec<String>,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

fn parse_number(text: &str, line: usize, col: usize) -> Result<f64, ParseError> {
    let v: f64 = text
        .parse()
        .map_err(|_| err(line, col, format!("malformed number `{text}`")))?;
    if v.is_nan() {
        return Err(err(line, col, format!("`{text}` is not a number")));
    }
    if v.is_infinite() {
        let lower = text.to_ascii_lowercase();
        let msg = if lower.contains("inf") {
            format!("infinite coordinate `{text}`")
        } else {
            format!("`{text}` overflows a 64-bit float")
        };
        return Err(err(line, col, msg));
    }
    Ok(v)
}

pub fn parse_trajectories(text: &str) -> Result<Parsed, ParseError> {
    let mut trajectories = Vec::new();
    let mut warnings = Vec::new();
    let mut version: Option<u32> = None;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let tokens = tokens_with_columns(content);
        if tokens[0].1 == "version" {
            if version.is_some() || !trajectories.is_empty() {
                return Err(err(line_no, tokens[0].0, "`version` must be the first line"));
            }
            let (col, v) = match tokens.get(1) {
                Some(t) => *t,
                None => return Err(err(line_no, tokens[0].0, "missing version number")),
            };
            let v: u32 = v
                .parse()
                .map_err(|_| err(line_no, col, format!("malformed version `{v}`")))?;
            if v != FORMAT_VERSION {
                return Err(err(line_no, col, format!("unsupported version {v}")));
            }
            if let Some(&(c, extra)) = tokens.get(2) {
                return Err(err(line_no, c, format!("unexpected `{extra}` after version")));
            }
            version = Some(v);
            continue;
        }

        let mut pts: Vec<Point> = Vec::with_capacity(tokens.len());
        for (col, tok) in tokens {
            let (xs, ys) = tok
                .split_once(',')
                .ok_or_else(|| err(line_no, col, format!("expected `x,y`, found `{tok}`")))?;
            let x = parse_number(xs, line_no, col)?;
            let y = parse_number(ys, line_no, col + xs.len() + 1)?;
            let p = Point::new(x, y);
            if let Some(q) = pts.last() {
                if q.dist(p) <= TOL_PT {
                    warnings.push(format!(
                        "line {line_no}, column {col}: duplicate waypoint {tok} dropped"
                    ));
                    continue;
                }
            }
            pts.push(p);
        }
        trajectories.push(Trajectory::new(pts).map_err(|e| err(line_no, 1, e.to_string()))?);
    }

    let set = TrajectorySet::new(trajectories).map_err(|_| err(1, 1, "no trajectories in input"))?;
    Ok(Parsed {
        set,
        version: version.unwrap_or(FORMAT_VERSION),
        warnings,
    })
}

fn tokens_with_columns(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((b, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    // Columns are 1-based character positions.
    out.into_iter()
        .map(|(b, t)| (s[..b].chars().count() + 1, t))
        .collect()
}

/// Shortest decimal that parses back to `v`.
pub fn fmt_num(v: f64) -> String {
    let v = v + 0.0; // -0 prints as 0
    let plain = format!("{v}");
    if plain.len() > 24 {
        format!("{v:e}")
    } else {
        plain
    }
}

pub fn format_trajectories(set: &TrajectorySet) -> String {
    let mut out = format!("version {FORMAT_VERSION}\n");
    for t in set {
        let line: Vec<String> = t
            .waypoints()
            .iter()
            .map(|p| format!("{},{}", fmt_num(p.x), fmt_num(p.y)))
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_width: Option<f64>,
}

/// One solver run; field order is the serialized order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub solver: String,
    pub center: [f64; 2],
    pub radius: f64,
    pub distances: Vec<f64>,
    pub wall_time_s: f64,
    pub params: RunParams,
}

impl ResultRecord {
    pub fn new(solver: &str, ball: &Ball, set: &TrajectorySet, wall_time_s: f64, params: RunParams) -> Self {
        Self {
            solver: solver.to_string(),
            center: [ball.center.x + 0.0, ball.center.y + 0.0],
            radius: ball.radius,
            distances: set.iter().map(|t| dist_point_trajectory(ball.center, t)).collect(),
            wall_time_s,
            params,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.distances.iter().fold(0.0, |m, &d| m.max(d))
    }

    /// Every trajectory lies within the radius, up to tolerance.
    pub fn is_consistent(&self) -> bool {
        let tol = crate::geom::dist_tol(self.radius);
        self.distances.iter().all(|&d| d <= self.radius + tol)
    }
}

impl fmt::Display for ResultRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "solver       {}", self.solver)?;
        writeln!(f, "center       ({}, {})", fmt_num(self.center[0]), fmt_num(self.center[1]))?;
        writeln!(f, "radius       {}", fmt_num(self.radius))?;
        writeln!(f, "max residual {}", fmt_num(self.max_residual()))?;
        write!(f, "wall time    {:.6} s", self.wall_time_s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Canvas width in pixels; height follows the aspect ratio.
    pub width_px: f64,
    /// Lift collinear runs shared by several trajectories apart.
    pub raise_overlaps: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            width_px: 800.0,
            raise_overlaps: false,
        }
    }
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf", "#e377c2", "#8c564b", "#bcbd22",
    "#7f7f7f",
];

pub fn color(i: usize) -> String {
    match PALETTE.get(i) {
        Some(c) => c.to_string(),
        None => format!("hsl({:.1},70%,45%)", (i as f64 * 137.508) % 360.0),
    }
}

/// Per-waypoint lift in units of one raise step.
fn raise_levels(set: &TrajectorySet) -> Vec<Vec<usize>> {
    let ts = set.trajectories();
    ts.iter()
        .enumerate()
        .map(|(i, t)| {
            let seg_levels: Vec<usize> = t
                .segments()
                .map(|s| {
                    ts[..i]
                        .iter()
                        .filter(|other| {
                            other.segments().any(|o| {
                                matches!(segment_segment_intersection(&s, &o),
                                    SegmentIntersection::Overlap(a, b) if a.dist(b) > TOL_PT)
                            })
                        })
                        .count()
                })
                .collect();
            (0..t.waypoints().len())
                .map(|w| {
                    let before = w.checked_sub(1).and_then(|j| seg_levels.get(j)).copied().unwrap_or(0);
                    let after = seg_levels.get(w).copied().unwrap_or(0);
                    before.max(after)
                })
                .collect()
        })
        .collect()
}

/// An SVG 1.1 figure: one colored polyline per trajectory, ghosts in thin
/// gray, and the ball as a black circle (a dot when its radius is zero).
pub fn render_svg(set: &TrajectorySet, ball: Option<&Ball>, ghosts: Option<&GhostSet>, opts: &SvgOptions) -> String {
    let mut pts: Vec<Point> = set.waypoints().collect();
    if let Some(g) = ghosts {
        pts.extend(g.trajectories.iter().flat_map(|t| t.waypoints().iter().copied()));
    }
    if let Some(b) = ball {
        pts.push(b.center + Point::new(b.radius, b.radius));
        pts.push(b.center - Point::new(b.radius, b.radius));
    }
    let raw = Rect::around(pts).expect("non-empty set");
    let extent = raw.width().max(raw.height()).max(1e-9);
    let step = 0.015 * extent;
    let levels = if opts.raise_overlaps { Some(raise_levels(set)) } else { None };
    let top_raise = levels
        .as_ref()
        .map_or(0, |l| l.iter().flatten().copied().max().unwrap_or(0)) as f64
        * step;
    let mut view = raw.expanded(0.05 * extent);
    view.max.y += top_raise;

    let scale = opts.width_px / view.width();
    let height_px = view.height() * scale;
    let stroke = 2.0 / scale;
    // World y grows upward; flip in the group transform.
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="{} {} {} {}">"#,
        opts.width_px,
        height_px,
        view.min.x,
        -view.max.y,
        view.width(),
        view.height()
    );
    let _ = writeln!(s, r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#, view.min.x, -view.max.y, view.width(), view.height());
    let _ = writeln!(s, r#"<g transform="scale(1,-1)" fill="none" stroke-linejoin="round" stroke-linecap="round">"#);

    if let Some(g) = ghosts.filter(|g| !g.trajectories.is_empty()) {
        let _ = writeln!(s, r##"<g id="ghosts" stroke="#999999" stroke-width="{}">"##, stroke * 0.25);
        for t in &g.trajectories {
            let _ = writeln!(s, "{}", polyline(t.waypoints().iter().copied(), None));
        }
        let _ = writeln!(s, "</g>");
    }

    let _ = writeln!(s, r#"<g id="trajectories" stroke-width="{stroke}">"#);
    for (i, t) in set.iter().enumerate() {
        let lifted = t.waypoints().iter().enumerate().map(|(w, p)| {
            let lift = levels.as_ref().map_or(0, |l| l[i][w]) as f64 * step;
            *p + Point::new(0.0, lift)
        });
        let _ = writeln!(s, "{}", polyline(lifted, Some(&color(i))));
        if t.num_segments() == 0 {
            let p = t.first();
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{}" fill="{}" stroke="none"/>"#, p.x, p.y, 2.0 * stroke, color(i));
        }
    }
    let _ = writeln!(s, "</g>");

    if let Some(b) = ball {
        if b.radius > 0.0 {
            let _ = writeln!(
                s,
                r#"<circle id="ball" cx="{}" cy="{}" r="{}" stroke="black" stroke-width="{}"/>"#,
                b.center.x, b.center.y, b.radius, stroke
            );
        } else {
            let _ = writeln!(
                s,
                r#"<circle id="ball" cx="{}" cy="{}" r="{}" fill="black" stroke="none"/>"#,
                b.center.x,
                b.center.y,
                3.0 * stroke
            );
        }
    }
    let _ = writeln!(s, "</g>\n</svg>");
    s
}

fn polyline(pts: impl Iterator<Item = Point>, stroke: Option<&str>) -> String {
    let coords: Vec<String> = pts.map(|p| format!("{},{}", p.x, p.y)).collect();
    match stroke {
        Some(c) => format!(r#"<polyline stroke="{c}" points="{}"/>"#, coords.join(" ")),
        None => format!(r#"<polyline points="{}"/>"#, coords.join(" ")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::ghost_trajectories;
    use crate::constructions::lp_monster;

    #[test]
    fn parses_basic_file() {
        let p = parse_trajectories("# two segments\n0,0 1,0\n0,2 1,2\n").unwrap();
        assert_eq!(p.set.len(), 2);
        assert!(p.set.iter().all(|t| t.num_segments() == 1));
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn single_waypoint_is_stationary() {
        let p = parse_trajectories("version 1\n3,4\n").unwrap();
        assert_eq!(p.set.get(0).unwrap().num_segments(), 0);
    }

    #[test]
    fn overflow_is_located() {
        let e = parse_trajectories("0,0 1,1\n2,2 1e400,3\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        assert!(e.message.contains("1e400"), "{e}");
    }

    #[test]
    fn rejects_bad_tokens() {
        let e = parse_trajectories("0,0 1;1\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        let e = parse_trajectories("0,0 1,x\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
        assert!(parse_trajectories("0,0 nan,1\n").is_err());
        assert!(parse_trajectories("0,0 inf,1\n").is_err());
        assert!(parse_trajectories("# nothing\n\n").is_err());
        assert!(parse_trajectories("version 2\n0,0\n").is_err());
        assert!(parse_trajectories("0,0\nversion 1\n").is_err());
    }

    #[test]
    fn collapses_duplicates() {
        let p = parse_trajectories("0,0 0,0 1,1 1,1\n").unwrap();
        assert_eq!(p.set.get(0).unwrap().waypoints().len(), 2);
        assert_eq!(p.warnings.len(), 2);
    }

    #[test]
    fn round_trip() {
        let set = lp_monster(7).unwrap();
        let back = parse_trajectories(&format_trajectories(&set)).unwrap().set;
        assert_eq!(back, set);
        let odd = TrajectorySet::new(vec![Trajectory::from_coords(&[(0.1, 1e-300), (1.0 / 3.0, -2e300)]).unwrap()]).unwrap();
        assert_eq!(parse_trajectories(&format_trajectories(&odd)).unwrap().set, odd);
    }

    #[test]
    fn record_residuals() {
        let set = parse_trajectories("0,0 1,0\n0,2 1,2\n").unwrap().set;
        let r = ResultRecord::new("exact", &Ball::new(Point::new(0.5, 1.0), 1.0), &set, 0.0, RunParams::default());
        assert_eq!(r.distances, vec![1.0, 1.0]);
        assert!(r.is_consistent());
        let bad = ResultRecord::new("exact", &Ball::new(Point::new(0.5, 1.0), 0.5), &set, 0.0, RunParams::default());
        assert!(!bad.is_consistent());
    }

    #[test]
    fn svg_monster() {
        let set = lp_monster(7).unwrap();
        let ball = Ball::new(Point::new(5.0, 1.0), 1.5);
        let svg = render_svg(&set, Some(&ball), None, &SvgOptions::default());
        assert_eq!(svg.matches("<polyline").count(), 7);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(!svg.contains("ghosts"));
        let raised = render_svg(&set, Some(&ball), None, &SvgOptions { raise_overlaps: true, ..Default::default() });
        assert_ne!(raised, svg);
    }

    #[test]
    fn svg_dot_and_ghosts() {
        let set = parse_trajectories("0,0 4,0\n").unwrap().set;
        let ball = Ball::new(Point::new(1.0, 0.0), 0.0);
        let g = ghost_trajectories(set.get(0).unwrap(), 1.0, 0.5).unwrap();
        let svg = render_svg(&set, Some(&ball), Some(&g), &SvgOptions::default());
        assert!(svg.contains(r#"fill="black""#));
        assert!(svg.contains(r#"id="ghosts""#));
        assert_eq!(svg.matches("<polyline").count(), 1 + g.trajectories.len());
    }
}
