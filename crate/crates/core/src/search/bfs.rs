use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::rc::Rc;
use std::time::Instant;

use super::initial::{create_initial_paths, finish};
use super::{
    no_loop_check, transfer_allowed, AnchorChain, PartialPath, QueueSample, SearchConfig,
    SearchError, SearchResult, StopReason,
};
use crate::grid::{distance, GridCoord, GridMap};
use crate::tangent::TangentGraph;

/// Paths share prefixes through parent links, so the secondary queue
/// costs one link per stored path rather than a waypoint list.
struct Link {
    id: u32,
    coord: GridCoord,
    parent: Option<Rc<Link>>,
}

#[derive(Clone)]
struct Partial {
    tip: Rc<Link>,
    length: f64,
    priority: f64,
    chain: AnchorChain,
}

impl Partial {
    fn write_waypoints(&self, out: &mut Vec<GridCoord>) {
        out.clear();
        let mut link = Some(&self.tip);
        while let Some(l) = link {
            out.push(l.coord);
            link = l.parent.as_ref();
        }
        out.reverse();
    }

    fn waypoints(&self) -> Vec<GridCoord> {
        let mut out = Vec::new();
        self.write_waypoints(&mut out);
        out
    }

    /// Priority, then length, then lexicographic waypoints.
    fn rank(&self, other: &Self) -> Ordering {
        self.priority
            .total_cmp(&other.priority)
            .then(self.length.total_cmp(&other.length))
            .then_with(|| self.waypoints().cmp(&other.waypoints()))
    }
}

/// Min-heap adapter.
struct Pending(Partial);

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.rank(&self.0)
    }
}

/// Chooses the next primary queue from one level's extensions: the K best
/// by rank, the rest parked in `secondary`, topped up from `secondary`
/// when fewer than K remain.
fn select(
    mut staging: Vec<Partial>,
    secondary: &mut BinaryHeap<Pending>,
    k: usize,
    limit: bool,
) -> Vec<Partial> {
    staging.sort_by(Partial::rank);
    if !limit {
        return staging;
    }
    if staging.len() > k {
        secondary.extend(staging.drain(k..).map(Pending));
    }
    while staging.len() < k {
        match secondary.pop() {
            Some(Pending(p)) => staging.push(p),
            None => break,
        }
    }
    staging
}

/// Finds up to `config.k` topologically distinct, locally shortest paths
/// from `start` to `goal`. Runs on the calling thread.
///
/// Once K paths are found the search carries on only with partial paths
/// whose priority is below the shortest length found, keeping finishers
/// that improve on it, so the shortest admissible path is always among
/// the results unless the expansion cap or time budget cuts it short.
pub fn search_k_paths(
    map: &GridMap,
    graph: &TangentGraph,
    start: GridCoord,
    goal: GridCoord,
    config: &SearchConfig,
) -> Result<SearchResult, SearchError> {
    if config.k == 0 {
        return Err(SearchError::ZeroK);
    }
    let started = Instant::now();
    let deadline = config.time_budget.map(|b| started + b);
    let k = config.k;
    let cap = config
        .max_expansions
        .unwrap_or(10 * k * (1 + graph.node_count()));

    let init = create_initial_paths(map, graph, start, goal, config.attach())?;
    let overlay = &init.overlay;
    let mut finished: Vec<Vec<GridCoord>> = init.direct.into_iter().map(|p| p.waypoints).collect();

    let root = Rc::new(Link {
        id: overlay.start_id(),
        coord: start,
        parent: None,
    });
    let mut staging = Vec::with_capacity(overlay.start_edges.len());
    for &v in &overlay.start_edges {
        let coord = graph.coord(v);
        let length = distance(start, coord);
        let chain = AnchorChain::start(map, start, coord);
        finished.extend(finish(map, overlay, v, &[start, coord], chain));
        staging.push(Partial {
            tip: Rc::new(Link {
                id: v,
                coord,
                parent: Some(root.clone()),
            }),
            length,
            priority: length + distance(coord, goal),
            chain,
        });
    }
    let mut secondary = BinaryHeap::new();
    let mut primary = select(staging, &mut secondary, k, config.priority_limit);

    let mut queue_trace = Vec::new();
    let mut expansions = 0;
    let mut buf = Vec::new();
    let stop = 'search: loop {
        if finished.len() >= k {
            // K found; only partial paths that could still beat the
            // shortest one stay in play
            let best = shortest(&finished);
            primary.retain(|p| p.priority < best);
            while primary.len() < k && secondary.peek().is_some_and(|p| p.0.priority < best) {
                primary.push(secondary.pop().unwrap().0);
            }
            if primary.is_empty() {
                break StopReason::ReachedK;
            }
        } else if primary.is_empty() {
            break StopReason::Exhausted;
        }
        queue_trace.push(QueueSample {
            primary: primary.len(),
            secondary: secondary.len(),
        });
        let mut staging = Vec::new();
        for p in primary.drain(..) {
            if expansions >= cap {
                break 'search StopReason::ExpansionCap;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                break 'search StopReason::Deadline;
            }
            expansions += 1;
            p.write_waypoints(&mut buf);
            let n = buf.len();
            let (prev, joint) = (buf[n - 2], buf[n - 1]);
            for &w in graph.neighbors(p.tip.id) {
                let next = graph.coord(w);
                // a graph node on the goal cell is reached through the goal's own edges
                if next == goal
                    || !transfer_allowed(map, prev, joint, next)
                    || !no_loop_check(&buf, next)
                {
                    continue;
                }
                let chain = p.chain.extend(map, prev, joint, next, false);
                if chain.is_empty() {
                    continue;
                }
                buf.push(next);
                if let Some(done) = finish(map, overlay, w, &buf, chain) {
                    if finished.len() < k || path_length(&done) < shortest(&finished) {
                        finished.push(done);
                    }
                }
                buf.pop();
                let length = p.length + distance(joint, next);
                staging.push(Partial {
                    tip: Rc::new(Link {
                        id: w,
                        coord: next,
                        parent: Some(p.tip.clone()),
                    }),
                    length,
                    priority: length + distance(next, goal),
                    chain,
                });
            }
        }
        primary = select(staging, &mut secondary, k, config.priority_limit);
    };

    let mut paths: Vec<PartialPath> = finished
        .into_iter()
        .map(|w| PartialPath::new(w, goal))
        .collect();
    paths.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then_with(|| a.waypoints.cmp(&b.waypoints))
    });
    Ok(SearchResult {
        paths,
        iterations: queue_trace.len(),
        queue_trace,
        expansions,
        stop,
        elapsed: started.elapsed(),
    })
}

fn path_length(waypoints: &[GridCoord]) -> f64 {
    waypoints.windows(2).map(|w| distance(w[0], w[1])).sum()
}

fn shortest(paths: &[Vec<GridCoord>]) -> f64 {
    paths
        .iter()
        .map(|p| path_length(p))
        .fold(f64::INFINITY, f64::min)
}

/// Whether the primary queue held at most `k` paths at the start of every
/// iteration.
pub fn queue_bound_property(trace: &[QueueSample], k: usize) -> bool {
    trace.iter().all(|s| s.primary <= k)
}
