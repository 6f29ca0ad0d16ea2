use thiserror::Error;

use crate::geom::Point;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("degenerate segment: endpoints ({}, {}) and ({}, {}) coincide", .a.x, .a.y, .b.x, .b.y)]
    DegenerateSegment { a: Point, b: Point },
    #[error("trajectory has no waypoints")]
    EmptyTrajectory,
    #[error("waypoint {index} repeats its predecessor")]
    RepeatedWaypoint { index: usize },
    #[error("trajectory set is empty")]
    EmptySet,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("no input constraints")]
    EmptyInput,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grid of {points} points exceeds the limit of {limit}")]
    GridTooLarge { points: f64, limit: f64 },
    #[error("basis recomputation did not settle after {steps} steps")]
    BasisCycling { steps: usize },
    #[error("trajectory {index} has {segments} segments; the LP-type solver needs exactly one")]
    NotSingleSegment { index: usize, segments: usize },
    #[error("construction needs n > 4, got {0}")]
    ConstructionTooSmall(usize),
}
