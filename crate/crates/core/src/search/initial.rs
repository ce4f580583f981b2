use super::{no_loop_check, transfer_allowed, AnchorChain, PartialPath, SearchError};
use crate::grid::{line_of_sight, GridCoord, GridMap};
use crate::tangent::{locally_collide_check_with, Tangency, TangentGraph};

/// The tangent graph plus temporary start and goal nodes. Graph nodes keep
/// their ids; the start is `n` and the goal `n + 1`.
#[derive(Debug, Clone)]
pub struct Overlay<'g> {
    pub graph: &'g TangentGraph,
    pub start: GridCoord,
    pub goal: GridCoord,
    /// Graph nodes joined to the start, ascending.
    pub start_edges: Vec<u32>,
    /// `goal_adjacent[v]` when graph node `v` is joined to the goal.
    pub goal_adjacent: Vec<bool>,
}

impl Overlay<'_> {
    pub fn start_id(&self) -> u32 {
        self.graph.node_count() as u32
    }

    pub fn goal_id(&self) -> u32 {
        self.graph.node_count() as u32 + 1
    }

    pub fn coord(&self, id: u32) -> GridCoord {
        match id as usize {
            i if i < self.graph.node_count() => self.graph.coord(id),
            i if i == self.graph.node_count() => self.start,
            _ => self.goal,
        }
    }
}

#[derive(Debug, Clone)]
pub struct InitialPaths<'g> {
    pub overlay: Overlay<'g>,
    /// `[start, v]` for every graph node `v` joined to the start.
    pub paths: Vec<PartialPath>,
    /// The straight start-goal path, when the two see each other.
    pub direct: Option<PartialPath>,
}

pub(crate) fn check_endpoints(
    map: &GridMap,
    graph: &TangentGraph,
    start: GridCoord,
    goal: GridCoord,
) -> Result<(), SearchError> {
    if (graph.width(), graph.height()) != (map.width(), map.height()) {
        return Err(SearchError::DimensionMismatch {
            graph: (graph.width(), graph.height()),
            map: (map.width(), map.height()),
        });
    }
    for g in [start, goal] {
        if !map.contains(g) {
            return Err(SearchError::OutsideMap(g));
        }
        if !map.is_passable(g) {
            return Err(SearchError::Blocked(g));
        }
    }
    if start == goal {
        return Err(SearchError::SameEndpoints(start));
    }
    Ok(())
}

/// Attaches start and goal to the graph: a node is joined to an endpoint
/// when the two see each other and, if `attach` is given, the segment
/// satisfies that local collide condition.
pub fn create_initial_paths<'g>(
    map: &GridMap,
    graph: &'g TangentGraph,
    start: GridCoord,
    goal: GridCoord,
    attach: Option<Tangency>,
) -> Result<InitialPaths<'g>, SearchError> {
    check_endpoints(map, graph, start, goal)?;
    let joined = |end: GridCoord, v: GridCoord| {
        v != start
            && v != goal
            && line_of_sight(map, end, v)
            && attach.is_none_or(|t| locally_collide_check_with(map, end, v, t))
    };
    let start_edges: Vec<u32> = (0..graph.node_count() as u32)
        .filter(|&v| joined(start, graph.coord(v)))
        .collect();
    let goal_adjacent = graph.nodes().iter().map(|&v| joined(goal, v)).collect();
    let overlay = Overlay {
        graph,
        start,
        goal,
        start_edges,
        goal_adjacent,
    };
    let paths = overlay
        .start_edges
        .iter()
        .map(|&v| PartialPath::new(vec![start, graph.coord(v)], goal))
        .collect();
    let direct = line_of_sight(map, start, goal).then(|| PartialPath::new(vec![start, goal], goal));
    Ok(InitialPaths {
        overlay,
        paths,
        direct,
    })
}

/// The finished path `path + [goal]`, when the last waypoint is joined to
/// the goal and the final transfer and segment are allowed. `chain` belongs
/// to `path`.
pub(crate) fn finish(
    map: &GridMap,
    overlay: &Overlay,
    last_id: u32,
    path: &[GridCoord],
    chain: AnchorChain,
) -> Option<Vec<GridCoord>> {
    if !overlay.goal_adjacent[last_id as usize] || path.len() < 2 {
        return None;
    }
    let n = path.len();
    let goal = overlay.goal;
    if !transfer_allowed(map, path[n - 2], path[n - 1], goal)
        || !no_loop_check(path, goal)
        || chain
            .extend(map, path[n - 2], path[n - 1], goal, true)
            .is_empty()
    {
        return None;
    }
    let mut done = path.to_vec();
    done.push(goal);
    Some(done)
}
