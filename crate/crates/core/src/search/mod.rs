//! Priority-limited breadth-first search for K topologically distinct,
//! locally shortest paths over a tangent graph.
//!
//! Paths grow one tangent edge per iteration. A transfer from one edge to
//! the next is allowed only when it wraps around an obstacle corner at the
//! joint, and a path may not cross or touch itself. Because waypoints are
//! cell centres while the real turning points are obstacle corners half a
//! cell away, an [`AnchorChain`] also tracks which corners the path can be
//! pulled taut around; a path with no consistent choice is a detour of a
//! straighter one and is dropped. Every grown path therefore stays taut,
//! and two taut paths between the same endpoints are never homotopic, so
//! no explicit homotopy test is needed.
//!
//! At most K partial paths are expanded per iteration; the rest wait in a
//! secondary priority queue ordered by `length + distance to goal`. After
//! K paths are found, partial paths that could still undercut the shortest
//! one keep being expanded under the same bound.

mod bfs;
mod constraints;
mod initial;

use std::time::Duration;

pub use bfs::{queue_bound_property, search_k_paths};
pub use constraints::{
    corner_mask, gets_closer_to_obstacle, no_loop_check, transfer_allowed, wraps_obstacle,
    AnchorChain, DIAGONALS,
};
pub use initial::{create_initial_paths, InitialPaths, Overlay};

use thiserror::Error;

use crate::grid::{distance, GridCoord};
use crate::tangent::Tangency;

/// A path from the start, possibly already ending at the goal.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialPath {
    pub waypoints: Vec<GridCoord>,
    pub length: f64,
    /// `length` plus the straight-line distance from the last waypoint to
    /// the goal.
    pub priority: f64,
    pub finished: bool,
}

impl PartialPath {
    pub fn new(waypoints: Vec<GridCoord>, goal: GridCoord) -> Self {
        let length = waypoints.windows(2).map(|w| distance(w[0], w[1])).sum();
        let last = *waypoints.last().expect("a path has at least one waypoint");
        PartialPath {
            length,
            priority: length + distance(last, goal),
            finished: last == goal,
            waypoints,
        }
    }

    pub fn last(&self) -> GridCoord {
        *self.waypoints.last().unwrap()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Number of distinct paths requested.
    pub k: usize,
    /// Cap on path expansions; `None` means `10 * k * (1 + nodes)`.
    pub max_expansions: Option<usize>,
    /// Wall-clock budget; the search stops early when it runs out.
    pub time_budget: Option<Duration>,
    /// Also require the local collide condition at both ends of the
    /// segments joining start and goal to the graph. By default a line of
    /// sight is enough; tautness at the first and last turn is checked
    /// during the search either way.
    pub strict_tangency: bool,
    /// Expand at most `k` paths per iteration. Turning this off gives the
    /// plain breadth-first search, which is only practical on small maps.
    pub priority_limit: bool,
}

impl SearchConfig {
    /// Extra condition on start and goal attachments, if any.
    pub fn attach(&self) -> Option<Tangency> {
        self.strict_tangency.then_some(Tangency::BothEnds)
    }

    pub fn new(k: usize) -> Self {
        SearchConfig {
            k,
            max_expansions: None,
            time_budget: None,
            strict_tangency: false,
            priority_limit: true,
        }
    }
}

/// Queue sizes at the start of one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueueSample {
    pub primary: usize,
    pub secondary: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// K paths found.
    ReachedK,
    /// Every partial path was expanded or pruned.
    Exhausted,
    /// The expansion cap was hit.
    ExpansionCap,
    /// The time budget ran out.
    Deadline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// Finished paths, sorted by length then waypoints. May hold fewer than
    /// K paths (not enough classes, or truncated) or a few more than K
    /// (paths found after the first K that are shorter than all before).
    pub paths: Vec<PartialPath>,
    pub queue_trace: Vec<QueueSample>,
    pub iterations: usize,
    pub expansions: usize,
    pub stop: StopReason,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn truncated(&self) -> bool {
        matches!(self.stop, StopReason::ExpansionCap | StopReason::Deadline)
    }

    pub fn peak_primary(&self) -> usize {
        self.queue_trace
            .iter()
            .map(|s| s.primary)
            .max()
            .unwrap_or(0)
    }

    pub fn peak_secondary(&self) -> usize {
        self.queue_trace
            .iter()
            .map(|s| s.secondary)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("{0} is outside the map")]
    OutsideMap(GridCoord),
    #[error("{0} is not passable")]
    Blocked(GridCoord),
    #[error("start and goal are the same cell {0}")]
    SameEndpoints(GridCoord),
    #[error("graph is {graph:?} but map is {map:?}")]
    DimensionMismatch { graph: (u32, u32), map: (u32, u32) },
}
