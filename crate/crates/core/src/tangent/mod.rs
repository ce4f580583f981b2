//! Tangent graph over obstacle surface cells.
//!
//! Two surface cells are joined when they see each other and the segment
//! between them satisfies the local collide condition: looking from one
//! end at the surface cells around the other end, the longest connection
//! that runs into an obstacle cell next to that end is longer than the
//! shortest connection that does not. In other words, the segment grazes
//! an obstacle at that end. Graph construction requires this at both ends,
//! so edges are bitangents and paths through them hug obstacles.

mod build;
mod io;

pub use build::{build_tangent_graph, build_tangent_graph_with, BuildStats};
pub use io::{deserialize_graph, serialize_graph, GraphFormatError, GraphFormatErrorKind};

use crate::grid::{distance, frontier, line_of_sight, segment_touches_cell, GridCoord, GridMap};

/// Which endpoints must satisfy the local collide condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tangency {
    /// Either endpoint suffices.
    EitherEnd,
    /// Both endpoints must satisfy it.
    BothEnds,
}

/// Undirected tangent graph. Node order is row-major by `(y, x)`; each
/// adjacency list is sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentGraph {
    width: u32,
    height: u32,
    nodes: Vec<GridCoord>,
    adjacency: Vec<Vec<u32>>,
}

impl TangentGraph {
    /// Assembles a graph from parts. Adjacency lists are sorted and
    /// deduplicated; symmetry is the caller's responsibility.
    pub fn from_parts(
        width: u32,
        height: u32,
        nodes: Vec<GridCoord>,
        mut adjacency: Vec<Vec<u32>>,
    ) -> Self {
        assert_eq!(nodes.len(), adjacency.len());
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Self {
            width,
            height,
            nodes,
            adjacency,
        }
    }

    pub fn empty(width: u32, height: u32) -> Self {
        Self::from_parts(width, height, Vec::new(), Vec::new())
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn nodes(&self) -> &[GridCoord] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn coord(&self, node: u32) -> GridCoord {
        self.nodes[node as usize]
    }

    pub fn neighbors(&self, node: u32) -> &[u32] {
        &self.adjacency[node as usize]
    }

    /// Node index of a cell, if it is a node.
    pub fn node_of(&self, g: GridCoord) -> Option<u32> {
        self.nodes
            .binary_search_by_key(&g.row_major(), |n| n.row_major())
            .ok()
            .map(|i| i as u32)
    }

    pub fn edge_length(&self, a: u32, b: u32) -> f64 {
        distance(self.coord(a), self.coord(b))
    }

    /// Unordered edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, list)| {
            let i = i as u32;
            list.iter()
                .copied()
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Re-checks every structural and geometric invariant against `map`.
    pub fn validate(&self, map: &GridMap) -> Result<(), GraphViolation> {
        if (self.width, self.height) != (map.width(), map.height()) {
            return Err(GraphViolation::Dimensions {
                graph: (self.width, self.height),
                map: (map.width(), map.height()),
            });
        }
        for w in self.nodes.windows(2) {
            if w[0].row_major() >= w[1].row_major() {
                return Err(GraphViolation::NodeOrder(w[1]));
            }
        }
        for (i, &g) in self.nodes.iter().enumerate() {
            if !map.is_surface(g) {
                return Err(GraphViolation::NotSurface(g));
            }
            for &j in &self.adjacency[i] {
                if j as usize >= self.nodes.len() {
                    return Err(GraphViolation::Dangling(g));
                }
                if j as usize == i {
                    return Err(GraphViolation::SelfLoop(g));
                }
                if self.adjacency[j as usize]
                    .binary_search(&(i as u32))
                    .is_err()
                {
                    return Err(GraphViolation::Asymmetric(g, self.coord(j)));
                }
            }
        }
        for (i, j) in self.edges() {
            let (a, b) = (self.coord(i), self.coord(j));
            if !line_of_sight(map, a, b) {
                return Err(GraphViolation::Blocked(a, b));
            }
            if !locally_collide_check(map, a, b) {
                return Err(GraphViolation::NotTangent(a, b));
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GraphViolation {
    #[error("graph is {graph:?} but map is {map:?}")]
    Dimensions { graph: (u32, u32), map: (u32, u32) },
    #[error("nodes not in row-major order at {0}")]
    NodeOrder(GridCoord),
    #[error("node {0} is not a surface cell")]
    NotSurface(GridCoord),
    #[error("node {0} has an out-of-range neighbor")]
    Dangling(GridCoord),
    #[error("self loop at {0}")]
    SelfLoop(GridCoord),
    #[error("edge {0} -> {1} has no reverse")]
    Asymmetric(GridCoord, GridCoord),
    #[error("edge {0} - {1} is not in line of sight")]
    Blocked(GridCoord, GridCoord),
    #[error("edge {0} - {1} fails the local collide condition")]
    NotTangent(GridCoord, GridCoord),
}

/// Local collide condition, satisfied at either end.
pub fn locally_collide_check(map: &GridMap, g1: GridCoord, g2: GridCoord) -> bool {
    locally_collide_check_with(map, g1, g2, Tangency::EitherEnd)
}

pub fn locally_collide_check_with(
    map: &GridMap,
    g1: GridCoord,
    g2: GridCoord,
    mode: Tangency,
) -> bool {
    let forward = collides_at_far_end(map, g1, g2);
    match mode {
        Tangency::EitherEnd => forward || collides_at_far_end(map, g2, g1),
        Tangency::BothEnds => forward && collides_at_far_end(map, g2, g1),
    }
}

/// One direction of the check: looking from `origin` at the surface cells
/// around `far`. A connection counts as colliding when it touches one of
/// the unpassable cells around `far`.
pub fn collides_at_far_end(map: &GridMap, origin: GridCoord, far: GridCoord) -> bool {
    let ring = frontier(far);
    let mut blocked = [GridCoord::new(0, 0); 8];
    let mut n_blocked = 0;
    for &g in &ring {
        if !map.is_passable(g) {
            blocked[n_blocked] = g;
            n_blocked += 1;
        }
    }
    if n_blocked == 0 {
        return false;
    }
    let blocked = &blocked[..n_blocked];
    let mut longest_colliding = 0.0_f64;
    let mut shortest_free = f64::INFINITY;
    for g in ring {
        if !map.is_surface(g) {
            continue;
        }
        let d = distance(origin, g);
        if blocked.iter().any(|&o| segment_touches_cell(origin, g, o)) {
            longest_colliding = longest_colliding.max(d);
        } else {
            shortest_free = shortest_free.min(d);
        }
    }
    longest_colliding > shortest_free
}

/// Candidates other than `g` that are in line of sight of `g`.
pub fn visible_set(map: &GridMap, g: GridCoord, candidates: &[GridCoord]) -> Vec<GridCoord> {
    candidates
        .iter()
        .copied()
        .filter(|&c| c != g && line_of_sight(map, g, c))
        .collect()
}
