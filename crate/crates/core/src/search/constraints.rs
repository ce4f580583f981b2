//! Edge-transfer and iteration constraints checked while extending paths.

use crate::grid::{angle, frontier, vector_angle, GeometryError, GridCoord, GridMap};

/// Edge-transfer constraint for `g1 -> g2 -> g3`: some unpassable cell
/// around the joint `g2` lies strictly inside the turn cone, measured at
/// `g2` against the cone's bisector. A straight-through transfer has no
/// bisector; any adjacent obstacle then qualifies.
pub fn gets_closer_to_obstacle(
    map: &GridMap,
    g1: GridCoord,
    g2: GridCoord,
    g3: GridCoord,
) -> Result<bool, GeometryError> {
    let half = angle(g1, g2, g3)? / 2.0;
    let unit = |g: GridCoord| {
        let (dx, dy) = (f64::from(g.x - g2.x), f64::from(g.y - g2.y));
        let len = dx.hypot(dy);
        (dx / len, dy / len)
    };
    let (u1, u3) = (unit(g1), unit(g3));
    let bisector = (u1.0 + u3.0, u1.1 + u3.1);
    let straight = bisector.0.hypot(bisector.1) < 1e-9;
    Ok(frontier(g2).into_iter().any(|o| {
        if map.is_passable(o) {
            return false;
        }
        straight || vector_angle(bisector, (f64::from(o.x - g2.x), f64::from(o.y - g2.y))) < half
    }))
}

/// Companion to the cone test: `g2` sits diagonally off a convex obstacle
/// corner, and that corner's cell, taken as a closed unit square, meets the
/// triangle `g1, g2, g3`. A corner cell is an unpassable diagonal neighbour
/// of `g2` whose two cells shared with `g2` are passable.
///
/// Without such a cell the chord `g1 -> g3` sweeps no obstacle and `g2` is
/// a removable waypoint. Cells along a straight wall or in a concave pocket
/// are excluded too: several neighbouring surface cells would otherwise
/// each pass as the turning point around the same corner, producing
/// near-copies of one path. Straight and doubled-back transfers span no
/// triangle and fail.
pub fn wraps_obstacle(map: &GridMap, g1: GridCoord, g2: GridCoord, g3: GridCoord) -> bool {
    if orient(g1, g2, g3) == 0 {
        return false;
    }
    // doubled coordinates keep cell corners integral
    let tri = [g1, g2, g3].map(|g| (2 * i64::from(g.x), 2 * i64::from(g.y)));
    frontier(g2)
        .into_iter()
        .filter(|&o| {
            o.x != g2.x
                && o.y != g2.y
                && !map.is_passable(o)
                && map.is_passable(GridCoord::new(o.x, g2.y))
                && map.is_passable(GridCoord::new(g2.x, o.y))
        })
        .any(|o| {
            let (cx, cy) = (2 * i64::from(o.x), 2 * i64::from(o.y));
            let square = [
                (cx - 1, cy - 1),
                (cx + 1, cy - 1),
                (cx + 1, cy + 1),
                (cx - 1, cy + 1),
            ];
            convex_overlap(&tri, &square)
        })
}

/// Separating-axis test for two closed convex polygons.
fn convex_overlap(a: &[(i64, i64)], b: &[(i64, i64)]) -> bool {
    let separated_by_edges_of = |p: &[(i64, i64)], q: &[(i64, i64)]| {
        (0..p.len()).any(|i| {
            let (e0, e1) = (p[i], p[(i + 1) % p.len()]);
            let axis = (e0.1 - e1.1, e1.0 - e0.0);
            let project = |poly: &[(i64, i64)]| {
                let dots = poly.iter().map(|v| v.0 * axis.0 + v.1 * axis.1);
                (dots.clone().min().unwrap(), dots.max().unwrap())
            };
            let ((pmin, pmax), (qmin, qmax)) = (project(p), project(q));
            pmax < qmin || qmax < pmin
        })
    };
    !separated_by_edges_of(a, b) && !separated_by_edges_of(b, a)
}

/// Diagonal directions from a cell toward the obstacle corners it can turn
/// around, in a fixed order. Bit `i` of a corner mask refers to entry `i`.
pub const DIAGONALS: [(i32, i32); 4] = [(-1, -1), (1, -1), (-1, 1), (1, 1)];

/// Convex obstacle corners next to `g`: bit `i` is set when the diagonal
/// neighbour in direction `DIAGONALS[i]` is unpassable and the two cells it
/// shares with `g` are passable.
pub fn corner_mask(map: &GridMap, g: GridCoord) -> u8 {
    let mut mask = 0;
    for (i, &(dx, dy)) in DIAGONALS.iter().enumerate() {
        if !map.is_passable(GridCoord::new(g.x + dx, g.y + dy))
            && map.is_passable(GridCoord::new(g.x + dx, g.y))
            && map.is_passable(GridCoord::new(g.x, g.y + dy))
        {
            mask |= 1 << i;
        }
    }
    mask
}

/// Index standing for the cell centre of a start or goal in an
/// [`AnchorChain`] instead of an obstacle corner.
const CENTRE: usize = 4;

/// Turning point of `g` in doubled coordinates: the obstacle corner in
/// direction `DIAGONALS[corner]`, or the cell centre for [`CENTRE`].
fn anchor(g: GridCoord, corner: usize) -> (i64, i64) {
    let (x, y) = (2 * i64::from(g.x), 2 * i64::from(g.y));
    match DIAGONALS.get(corner) {
        Some(&(dx, dy)) => (x + i64::from(dx), y + i64::from(dy)),
        None => (x, y),
    }
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// `d` lies strictly inside the cone spanned by `p` and `q` (less than a
/// half turn).
fn strictly_inside(p: (i64, i64), q: (i64, i64), d: (i64, i64)) -> bool {
    let s = cross(p, q).signum();
    s != 0 && cross(p, d).signum() == s && cross(d, q).signum() == s
}

/// The polyline `a1 -> P -> a3`, where `P` is the obstacle corner of `g2`
/// in direction `DIAGONALS[corner]`, bends around that corner: the open
/// turn wedge at `P` overlaps the open quadrant the obstacle cell fills,
/// and neither leg heads into that quadrant. Points are in doubled
/// coordinates.
fn bends_around(a1: (i64, i64), g2: GridCoord, corner: usize, a3: (i64, i64)) -> bool {
    let p = anchor(g2, corner);
    let (dx, dy) = DIAGONALS[corner];
    let wedge = [(a1.0 - p.0, a1.1 - p.1), (a3.0 - p.0, a3.1 - p.1)];
    let quadrant = [(i64::from(dx), 0), (0, i64::from(dy))];
    if cross(wedge[0], wedge[1]) == 0
        || wedge
            .iter()
            .any(|&w| strictly_inside(quadrant[0], quadrant[1], w))
    {
        return false;
    }
    // two open cones overlap exactly when a positive combination of two of
    // their edge rays lies strictly inside both
    let rays = [wedge[0], wedge[1], quadrant[0], quadrant[1]];
    rays.iter().enumerate().any(|(i, r)| {
        rays[i + 1..].iter().any(|s| {
            let d = (r.0 + s.0, r.1 + s.1);
            strictly_inside(wedge[0], wedge[1], d) && strictly_inside(quadrant[0], quadrant[1], d)
        })
    })
}

/// The open segment between `a` and `b` (doubled coordinates) misses the
/// interior of every unpassable cell. Running along an obstacle face or
/// through a corner point is allowed.
fn open_segment_clear(map: &GridMap, a: (i64, i64), b: (i64, i64)) -> bool {
    let (a, b) = if (a.0, a.1) <= (b.0, b.1) {
        (a, b)
    } else {
        (b, a)
    };
    let blocked = |i: i64, j: i64| !map.is_passable(GridCoord::new(i as i32, j as i32));
    // cells whose open extent (2c - 1, 2c + 1) meets the open range (lo, hi)
    let cells = |lo: i64, hi: i64| ((lo + 1).div_euclid(2))..=((hi - 1 + 1).div_euclid(2));
    if a.0 == b.0 {
        if a.0 % 2 != 0 {
            return true;
        }
        return !cells(a.1, b.1).any(|j| 2 * j + 1 > a.1 && 2 * j - 1 < b.1 && blocked(a.0 / 2, j));
    }
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    // numerator of y at x, over the denominator dx
    let y_num = |x: i64| a.1 * dx + (x - a.0) * dy;
    for i in cells(a.0, b.0) {
        let (x0, x1) = ((2 * i - 1).max(a.0), (2 * i + 1).min(b.0));
        if x0 >= x1 {
            continue;
        }
        let (y0, y1) = (y_num(x0), y_num(x1));
        let (lo, hi) = (y0.min(y1), y0.max(y1));
        let j_lo = lo.div_euclid(dx).div_euclid(2) - 1;
        let j_hi = hi.div_euclid(dx).div_euclid(2) + 1;
        for j in j_lo..=j_hi {
            if lo < (2 * j + 1) * dx && hi > (2 * j - 1) * dx && blocked(i, j) {
                return false;
            }
        }
    }
    true
}

/// Feasible turning points along a growing path.
///
/// Waypoints are cell centres, but the path really turns around obstacle
/// corners half a cell away. A chain of turns that each look fine from the
/// cell centres can still fail to wrap anything once the corners are used,
/// and is then a detour of a straighter path in the same class. The chain
/// records which `(previous, last)` pairs of turning points keep every
/// joint so far bent around its corner; an empty chain is a dead path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnchorChain(u32);

impl AnchorChain {
    /// After the first segment `start -> v`.
    pub fn start(map: &GridMap, start: GridCoord, v: GridCoord) -> Self {
        let corners = corner_mask(map, v);
        let mut bits = 0;
        let from = anchor(start, CENTRE);
        for j in 0..4 {
            if corners & (1 << j) != 0 && open_segment_clear(map, from, anchor(v, j)) {
                bits |= 1 << (CENTRE * 5 + j);
            }
        }
        AnchorChain(bits)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Extends `g1 -> g2` by `g3`. `g3_is_goal` fixes its turning point to
    /// the cell centre.
    pub fn extend(
        self,
        map: &GridMap,
        g1: GridCoord,
        g2: GridCoord,
        g3: GridCoord,
        g3_is_goal: bool,
    ) -> Self {
        let next: Vec<usize> = if g3_is_goal {
            vec![CENTRE]
        } else {
            let corners = corner_mask(map, g3);
            (0..4).filter(|k| corners & (1 << k) != 0).collect()
        };
        let mut bits = 0;
        for i in 0..5 {
            for j in 0..4 {
                if self.0 & (1 << (i * 5 + j)) == 0 {
                    continue;
                }
                for &k in &next {
                    let a3 = anchor(g3, k);
                    if bends_around(anchor(g1, i), g2, j, a3)
                        && open_segment_clear(map, anchor(g2, j), a3)
                    {
                        bits |= 1 << (j * 5 + k);
                    }
                }
            }
        }
        AnchorChain(bits)
    }
}

/// Full transfer constraint applied at every joint of a path: the cone
/// test plus [`wraps_obstacle`].
pub fn transfer_allowed(map: &GridMap, g1: GridCoord, g2: GridCoord, g3: GridCoord) -> bool {
    gets_closer_to_obstacle(map, g1, g2, g3).unwrap_or(false) && wraps_obstacle(map, g1, g2, g3)
}

fn orient(a: GridCoord, b: GridCoord, c: GridCoord) -> i64 {
    let (abx, aby) = (i64::from(b.x - a.x), i64::from(b.y - a.y));
    let (acx, acy) = (i64::from(c.x - a.x), i64::from(c.y - a.y));
    (abx * acy - aby * acx).signum()
}

fn on_segment(a: GridCoord, b: GridCoord, p: GridCoord) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Whether closed segments `a-b` and `c-d` share any point.
pub(crate) fn segments_touch(a: GridCoord, b: GridCoord, c: GridCoord, d: GridCoord) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0 && (o1 != 0 || o2 != 0) {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// No-loop iteration constraint for appending `next` to `path`: `next` is
/// not already a waypoint, the new segment only meets the previous segment
/// at their shared joint, and it does not touch any earlier segment.
pub fn no_loop_check(path: &[GridCoord], next: GridCoord) -> bool {
    let Some(&last) = path.last() else {
        return true;
    };
    if path.contains(&next) {
        return false;
    }
    let n = path.len();
    if n >= 2 {
        let prev = path[n - 2];
        // collinear and doubling back over the previous segment
        let back = i64::from(prev.x - last.x) * i64::from(next.x - last.x)
            + i64::from(prev.y - last.y) * i64::from(next.y - last.y);
        if orient(prev, last, next) == 0 && back > 0 {
            return false;
        }
    }
    path.windows(2)
        .take(n.saturating_sub(2))
        .all(|w| !segments_touch(w[0], w[1], last, next))
}
