//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::path::PathBuf;

use topopath::grid::{distance, line_of_sight, parse_movingai_map, GridCoord, GridMap};
use topopath::harness::synth::{city_blocks, random_obstacles};
use topopath::search::{gets_closer_to_obstacle, transfer_allowed};
use topopath::tangent::{locally_collide_check_with, Tangency, TangentGraph};

pub const CITY_START: GridCoord = GridCoord::new(59, 72);
pub const CITY_GOAL: GridCoord = GridCoord::new(109, 214);

/// Seed of the generated city used when the real benchmark map is absent.
pub const STAND_IN_SEED: u64 = 2;

/// The benchmark city map, from `TOPOPATH_BERLIN_MAP` or
/// `data/Berlin_1_256.map`, else a generated 256x256 city of similar
/// texture. The label says which one was used.
pub fn city_map() -> (GridMap, String) {
    let candidates = std::env::var_os("TOPOPATH_BERLIN_MAP")
        .map(PathBuf::from)
        .into_iter()
        .chain([PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/Berlin_1_256.map")]);
    for path in candidates {
        if let Ok(text) = std::fs::read_to_string(&path) {
            let map = parse_movingai_map(&text).expect("benchmark map parses");
            return (map, format!("Berlin_1_256 from {}", path.display()));
        }
    }
    let map = city_blocks(256, 256, STAND_IN_SEED, &[CITY_START, CITY_GOAL]);
    (
        map,
        format!("STAND-IN generated city (seed {STAND_IN_SEED}); Berlin_1_256 not found"),
    )
}

/// Map `i` of the 50-map random corpus: 64x64 with 3 to 20 components.
pub fn corpus_map(i: u64) -> GridMap {
    random_obstacles(64, 64, 3 + (i % 18) as usize, 1000 + i)
}

/// Shortest simple start-goal path over the graph plus start/goal
/// attachments, where every joint passes the single-joint transfer test and
/// the whole path admits a taut chain of obstacle corners (see
/// [`corner_chain_states`]). Best-first over whole paths with the
/// straight-line heuristic; `None` when no such path exists. Panics if the
/// search exceeds `budget` pops.
pub fn shortest_taut_path(
    map: &GridMap,
    graph: &TangentGraph,
    start: GridCoord,
    goal: GridCoord,
    attach: Option<Tangency>,
    budget: usize,
) -> Option<(f64, Vec<GridCoord>)> {
    let n = graph.node_count();
    let (s, t) = (n, n + 1);
    let coord = |i: usize| match i {
        i if i < n => graph.coord(i as u32),
        i if i == s => start,
        _ => goal,
    };
    let mut adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            graph
                .neighbors(i as u32)
                .iter()
                .map(|&j| j as usize)
                .filter(|&j| graph.coord(j as u32) != start && graph.coord(j as u32) != goal)
                .collect()
        })
        .collect();
    adj.push(Vec::new());
    adj.push(Vec::new());
    let joined = |end: GridCoord, g: GridCoord| {
        line_of_sight(map, end, g)
            && attach.is_none_or(|a| locally_collide_check_with(map, end, g, a))
    };
    for v in 0..n {
        let g = graph.coord(v as u32);
        if g == start || g == goal {
            continue;
        }
        if joined(start, g) {
            adj[s].push(v);
        }
        if joined(goal, g) {
            adj[v].push(t);
        }
    }
    if line_of_sight(map, start, goal) {
        adj[s].push(t);
    }

    // arena of (vertex, parent, length, chain states); the heap orders by
    // length + heuristic
    type Entry = (usize, usize, f64, Vec<(Anchor, Anchor)>);
    let mut arena: Vec<Entry> = vec![(s, usize::MAX, 0.0, Vec::new())];
    let mut heap = BinaryHeap::new();
    let key = |f: f64| Reverse((f * 1e9) as u64);
    heap.push((key(distance(start, goal)), 0usize));
    let mut pops = 0;
    let mut walk = Vec::new();
    while let Some((_, at)) = heap.pop() {
        pops += 1;
        assert!(
            pops <= budget,
            "shortest simple path search exceeded {budget} pops"
        );
        let (c, _, d, _) = arena[at];
        walk.clear();
        let mut i = at;
        while i != usize::MAX {
            walk.push(coord(arena[i].0));
            i = arena[i].1;
        }
        walk.reverse();
        if c == t {
            return Some((d, walk.clone()));
        }
        for &x in &adj[c] {
            let next = coord(x);
            let m = walk.len();
            if m >= 2 && !transfer_allowed(map, walk[m - 2], walk[m - 1], next) {
                continue;
            }
            if !simple_extension(&walk, next) {
                continue;
            }
            let states = if m == 1 {
                Vec::new()
            } else {
                let mut path = walk.clone();
                path.push(next);
                match corner_chain_states(map, &path, x == t) {
                    Some(states) => states,
                    None => continue,
                }
            };
            let nd = d + distance(coord(c), next);
            arena.push((x, at, nd, states));
            heap.push((key(nd + distance(next, goal)), arena.len() - 1));
        }
    }
    None
}

pub fn shortest_taut_length(
    map: &GridMap,
    graph: &TangentGraph,
    start: GridCoord,
    goal: GridCoord,
    attach: Option<Tangency>,
) -> Option<f64> {
    shortest_taut_path(map, graph, start, goal, attach, 5_000_000).map(|(d, _)| d)
}

/// A turning point in doubled coordinates.
pub type Anchor = (i64, i64);

fn doubled(g: GridCoord) -> Anchor {
    (2 * i64::from(g.x), 2 * i64::from(g.y))
}

/// Obstacle corners `g` can turn around, each with the blocked cell it
/// belongs to: every blocked diagonal neighbour whose two cells shared with
/// `g` are free.
fn turning_corners(map: &GridMap, g: GridCoord) -> Vec<(Anchor, GridCoord)> {
    let mut out = Vec::new();
    for dx in [-1, 1] {
        for dy in [-1, 1] {
            let o = GridCoord::new(g.x + dx, g.y + dy);
            if !map.is_passable(o)
                && map.is_passable(GridCoord::new(o.x, g.y))
                && map.is_passable(GridCoord::new(g.x, o.y))
            {
                out.push((
                    (
                        2 * i64::from(g.x) + i64::from(dx),
                        2 * i64::from(g.y) + i64::from(dy),
                    ),
                    o,
                ));
            }
        }
    }
    out
}

fn square(o: GridCoord) -> [Anchor; 4] {
    let (cx, cy) = doubled(o);
    [
        (cx - 1, cy - 1),
        (cx + 1, cy - 1),
        (cx + 1, cy + 1),
        (cx - 1, cy + 1),
    ]
}

/// Separating-axis test on the open interiors of two convex polygons (a
/// segment counts as a two-vertex polygon): touching is not overlapping.
fn interiors_meet(a: &[Anchor], b: &[Anchor]) -> bool {
    let separated = |p: &[Anchor], q: &[Anchor]| {
        (0..p.len()).any(|i| {
            let (e0, e1) = (p[i], p[(i + 1) % p.len()]);
            let axis = (e0.1 - e1.1, e1.0 - e0.0);
            if axis == (0, 0) {
                return false;
            }
            let span = |poly: &[Anchor]| {
                let dots: Vec<i64> = poly.iter().map(|v| v.0 * axis.0 + v.1 * axis.1).collect();
                (*dots.iter().min().unwrap(), *dots.iter().max().unwrap())
            };
            let ((pmin, pmax), (qmin, qmax)) = (span(p), span(q));
            pmax <= qmin || qmax <= pmin
        })
    };
    !separated(a, b) && !separated(b, a)
}

/// No blocked cell near the segment has its open interior crossed by it.
fn anchor_segment_clear(map: &GridMap, a: Anchor, b: Anchor) -> bool {
    let cell = |v: i64| v.div_euclid(2);
    let (x0, x1) = (cell(a.0.min(b.0)) - 1, cell(a.0.max(b.0)) + 1);
    let (y0, y1) = (cell(a.1.min(b.1)) - 1, cell(a.1.max(b.1)) + 1);
    (x0..=x1).all(|x| {
        (y0..=y1).all(|y| {
            let o = GridCoord::new(x as i32, y as i32);
            map.is_passable(o) || !interiors_meet(&[a, b], &square(o))
        })
    })
}

/// Turning-point assignments for the interior waypoints of `path` under
/// which every anchor segment stays clear and every turn's triangle
/// overlaps its obstacle cell. Returns the feasible (second-to-last,
/// last) anchor pairs, or `None` when there are none. The first waypoint
/// and, when `ends_at_goal`, the last one turn at their cell centres.
pub fn corner_chain_states(
    map: &GridMap,
    path: &[GridCoord],
    ends_at_goal: bool,
) -> Option<Vec<(Anchor, Anchor)>> {
    let options = |i: usize| -> Vec<(Anchor, Option<GridCoord>)> {
        if i == 0 || (i == path.len() - 1 && ends_at_goal) {
            vec![(doubled(path[i]), None)]
        } else {
            turning_corners(map, path[i])
                .into_iter()
                .map(|(a, o)| (a, Some(o)))
                .collect()
        }
    };
    // pairs (previous anchor, current anchor with its obstacle cell)
    let mut states: Vec<(Anchor, (Anchor, Option<GridCoord>))> = Vec::new();
    for (a1, o1) in options(1) {
        if anchor_segment_clear(map, doubled(path[0]), a1) {
            states.push((doubled(path[0]), (a1, o1)));
        }
    }
    for i in 2..path.len() {
        let mut next = Vec::new();
        for &(prev, (cur, obstacle)) in &states {
            let o = obstacle.expect("interior waypoints turn at a corner");
            for (a, oa) in options(i) {
                let bends = interiors_meet(&[prev, cur, a], &square(o));
                if bends && anchor_segment_clear(map, cur, a) && !next.contains(&(cur, (a, oa))) {
                    next.push((cur, (a, oa)));
                }
            }
        }
        states = next;
    }
    (!states.is_empty()).then(|| states.into_iter().map(|(p, (c, _))| (p, c)).collect())
}

/// Whole path passes the same constraints as the shortest-path oracle.
pub fn taut_chain(map: &GridMap, path: &[GridCoord]) -> bool {
    path.len() <= 2 || corner_chain_states(map, path, true).is_some()
}

fn cross(o: GridCoord, a: GridCoord, b: GridCoord) -> i64 {
    i64::from(a.x - o.x) * i64::from(b.y - o.y) - i64::from(a.y - o.y) * i64::from(b.x - o.x)
}

fn within(a: GridCoord, b: GridCoord, p: GridCoord) -> bool {
    (a.x.min(b.x)..=a.x.max(b.x)).contains(&p.x) && (a.y.min(b.y)..=a.y.max(b.y)).contains(&p.y)
}

/// Closed segments `a-b` and `c-d` share a point.
pub fn closed_segments_meet(a: GridCoord, b: GridCoord, c: GridCoord, d: GridCoord) -> bool {
    let (d1, d2) = (cross(a, b, c), cross(a, b, d));
    let (d3, d4) = (cross(c, d, a), cross(c, d, b));
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return true;
    }
    (d1 == 0 && within(a, b, c))
        || (d2 == 0 && within(a, b, d))
        || (d3 == 0 && within(c, d, a))
        || (d4 == 0 && within(c, d, b))
}

/// Appending `next` keeps the polyline simple: no repeated vertex, the new
/// segment meets the previous one only at the joint and no other segment.
pub fn simple_extension(path: &[GridCoord], next: GridCoord) -> bool {
    if path.contains(&next) {
        return false;
    }
    let m = path.len();
    if m >= 2 {
        let (p, q) = (path[m - 2], path[m - 1]);
        if cross(p, q, next) == 0 && within(p, q, next) {
            return false;
        }
        if cross(q, next, p) == 0 && within(q, next, p) {
            return false;
        }
    }
    (0..m.saturating_sub(2)).all(|i| !closed_segments_meet(path[i], path[i + 1], path[m - 1], next))
}

/// Whole polyline simple in the sense of [`simple_extension`].
pub fn is_simple(path: &[GridCoord]) -> bool {
    (1..path.len()).all(|i| simple_extension(&path[..i], path[i]))
}

/// Every segment in line of sight and every interior waypoint taut.
pub fn taut_and_free(map: &GridMap, path: &[GridCoord]) -> bool {
    path.windows(2).all(|w| line_of_sight(map, w[0], w[1]))
        && path
            .windows(3)
            .all(|w| gets_closer_to_obstacle(map, w[0], w[1], w[2]).unwrap_or(false))
}
