//! Minimum touching balls for planar trajectories: the smallest disc that
//! intersects every polyline of a set.

pub mod approx;
pub mod bench;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod geom;
pub mod io;
pub mod lp;
pub mod oracle;

pub use approx::{estimate_tmtb, ghost_trajectories, GhostSet};
pub use constructions::{lp_monster, monster_removals};
pub use error::{GeomError, SolveError};
pub use exact::exact_tmtb;
pub use geom::{Ball, Point, Segment, Trajectory, TrajectorySet};
pub use lp::lp_segment_mtb;
pub use oracle::grid_tmtb;
