//! Winding-number homotopy oracle.
//!
//! Each obstacle component gets an interior representative point. Two paths
//! with shared endpoints are told apart by the winding numbers of the loop
//! "first path, then second path reversed" around those points. Winding
//! numbers only see homology: a loop that goes around one obstacle, then
//! another, then undoes both in the same order has zero winding everywhere
//! yet cannot be contracted. Loops with an all-zero signature are therefore
//! also compared by their crossing word: every representative casts a ray
//! in a common generic direction, and the loop is written as the sequence
//! of signed ray crossings. The loop is contractible exactly when that word
//! reduces to empty in the free group.
//!
//! The search never consults this; it exists to check the search from the
//! outside.

use std::f64::consts::TAU;

use crate::grid::{GridCoord, GridMap};

/// 4-connected unpassable component not touching the map border.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstacleComponent {
    pub id: usize,
    pub cells: Vec<GridCoord>,
    pub representative: (f64, f64),
    pub centroid: (f64, f64),
}

/// Per-component winding numbers of a closed loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WindingSignature {
    pub values: Vec<i64>,
}

impl WindingSignature {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomotopyVerdict {
    Distinct,
    Homotopic,
    /// A representative sat on the loop even after perturbation.
    Inconclusive,
}

/// Components in row-major order of their first cell.
pub fn obstacle_components(map: &GridMap) -> Vec<ObstacleComponent> {
    let (w, h) = (map.width() as usize, map.height() as usize);
    let mut seen = vec![false; w * h];
    let mut out = Vec::new();
    for start in map.cells() {
        let si = start.y as usize * w + start.x as usize;
        if seen[si] || map.is_passable(start) {
            continue;
        }
        seen[si] = true;
        let mut cells = vec![start];
        let mut touches_border = false;
        let mut k = 0;
        while k < cells.len() {
            let g = cells[k];
            k += 1;
            if g.x == 0 || g.y == 0 || g.x as usize == w - 1 || g.y as usize == h - 1 {
                touches_border = true;
            }
            for n in [
                GridCoord::new(g.x + 1, g.y),
                GridCoord::new(g.x - 1, g.y),
                GridCoord::new(g.x, g.y + 1),
                GridCoord::new(g.x, g.y - 1),
            ] {
                if map.contains(n) && !map.is_passable(n) {
                    let ni = n.y as usize * w + n.x as usize;
                    if !seen[ni] {
                        seen[ni] = true;
                        cells.push(n);
                    }
                }
            }
        }
        if touches_border {
            continue;
        }
        cells.sort_by_key(|g| g.row_major());
        let count = cells.len() as f64;
        let centroid = (
            cells.iter().map(|g| f64::from(g.x) + 0.5).sum::<f64>() / count,
            cells.iter().map(|g| f64::from(g.y) + 0.5).sum::<f64>() / count,
        );
        let nearest = cells
            .iter()
            .min_by(|a, b| {
                let da =
                    (f64::from(a.x) + 0.5 - centroid.0).hypot(f64::from(a.y) + 0.5 - centroid.1);
                let db =
                    (f64::from(b.x) + 0.5 - centroid.0).hypot(f64::from(b.y) + 0.5 - centroid.1);
                da.total_cmp(&db)
            })
            .copied()
            .unwrap();
        out.push(ObstacleComponent {
            id: out.len(),
            cells,
            representative: (f64::from(nearest.x) + 0.5, f64::from(nearest.y) + 0.5),
            centroid,
        });
    }
    out
}

const PERTURBATION: f64 = 1e-3;
/// Irrational slope, so no ray runs through a second half-integer point.
const RAY: (f64, f64) = (0.525_731_112_119_133_6, 0.850_650_808_352_039_9);
const INTEGER_TOLERANCE: f64 = 1e-6;

/// Winding number of the closed polyline through cell centers of `loop_`
/// around `point`, or `None` when the point lies on the polyline or the
/// sum is not close to an integer.
pub fn winding_number(loop_: &[GridCoord], point: (f64, f64)) -> Option<i64> {
    if loop_.len() < 2 {
        return Some(0);
    }
    let mut total = 0.0;
    for (i, a) in loop_.iter().enumerate() {
        let b = loop_[(i + 1) % loop_.len()];
        let va = (
            f64::from(a.x) + 0.5 - point.0,
            f64::from(a.y) + 0.5 - point.1,
        );
        let vb = (
            f64::from(b.x) + 0.5 - point.0,
            f64::from(b.y) + 0.5 - point.1,
        );
        let cross = va.0 * vb.1 - va.1 * vb.0;
        let dot = va.0 * vb.0 + va.1 * vb.1;
        let scale = va.0.hypot(va.1) * vb.0.hypot(vb.1);
        if scale < 1e-12 || (cross.abs() <= 1e-12 * scale && dot <= 0.0) {
            return None;
        }
        total += cross.atan2(dot);
    }
    let turns = total / TAU;
    let rounded = turns.round();
    ((turns - rounded).abs() < INTEGER_TOLERANCE).then_some(rounded as i64)
}

/// Precomputed components for repeated comparisons on one map.
#[derive(Debug, Clone)]
pub struct HomotopyOracle {
    components: Vec<ObstacleComponent>,
}

impl HomotopyOracle {
    pub fn new(map: &GridMap) -> Self {
        Self {
            components: obstacle_components(map),
        }
    }

    pub fn components(&self) -> &[ObstacleComponent] {
        &self.components
    }

    /// Signature of an arbitrary closed loop; `None` if inconclusive.
    pub fn signature(&self, loop_: &[GridCoord]) -> Option<WindingSignature> {
        let values = self
            .components
            .iter()
            .map(|c| {
                winding_number(loop_, c.representative).or_else(|| {
                    let (dx, dy) = (
                        c.centroid.0 - c.representative.0,
                        c.centroid.1 - c.representative.1,
                    );
                    let len = dx.hypot(dy);
                    if len == 0.0 {
                        return None;
                    }
                    let moved = (
                        c.representative.0 + PERTURBATION * dx / len,
                        c.representative.1 + PERTURBATION * dy / len,
                    );
                    winding_number(loop_, moved)
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(WindingSignature { values })
    }

    /// Signature of the loop `p1` followed by `p2` reversed.
    pub fn loop_signature(&self, p1: &[GridCoord], p2: &[GridCoord]) -> Option<WindingSignature> {
        assert_eq!(p1.first(), p2.first(), "paths must share a start");
        assert_eq!(p1.last(), p2.last(), "paths must share a goal");
        let mut loop_: Vec<GridCoord> = p1.to_vec();
        loop_.extend(p2.iter().rev().skip(1).take(p2.len().saturating_sub(2)));
        self.signature(&loop_)
    }

    /// Freely reduced crossing word of the loop `p1` followed by `p2`
    /// reversed; letters are `(component id, ±1)`. `None` if a path runs
    /// through a representative.
    pub fn loop_word(&self, p1: &[GridCoord], p2: &[GridCoord]) -> Option<Vec<(usize, i8)>> {
        let mut word = self.path_word(p1)?;
        word.extend(self.path_word(p2)?.into_iter().rev().map(|(c, s)| (c, -s)));
        let mut reduced: Vec<(usize, i8)> = Vec::with_capacity(word.len());
        for letter in word {
            match reduced.last() {
                Some(&(c, s)) if c == letter.0 && s == -letter.1 => {
                    reduced.pop();
                }
                _ => reduced.push(letter),
            }
        }
        Some(reduced)
    }

    /// Signed ray crossings along an open polyline, in order.
    pub fn path_word(&self, path: &[GridCoord]) -> Option<Vec<(usize, i8)>> {
        let origins: Vec<(f64, f64)> = self
            .components
            .iter()
            .map(|c| {
                if path
                    .windows(2)
                    .all(|w| !passes_through(w[0], w[1], c.representative))
                {
                    return Some(c.representative);
                }
                let (dx, dy) = (
                    c.centroid.0 - c.representative.0,
                    c.centroid.1 - c.representative.1,
                );
                let len = dx.hypot(dy);
                let moved = (
                    c.representative.0 + PERTURBATION * dx / len,
                    c.representative.1 + PERTURBATION * dy / len,
                );
                (len > 0.0 && path.windows(2).all(|w| !passes_through(w[0], w[1], moved)))
                    .then_some(moved)
            })
            .collect::<Option<_>>()?;
        let mut word = Vec::new();
        let mut hits = Vec::new();
        for w in path.windows(2) {
            let p = (f64::from(w[0].x) + 0.5, f64::from(w[0].y) + 0.5);
            let v = (f64::from(w[1].x - w[0].x), f64::from(w[1].y - w[0].y));
            let denom = v.0 * RAY.1 - v.1 * RAY.0;
            if denom == 0.0 {
                continue;
            }
            hits.clear();
            for (id, o) in origins.iter().enumerate() {
                let r = (o.0 - p.0, o.1 - p.1);
                let t = (r.0 * RAY.1 - r.1 * RAY.0) / denom;
                let s = (r.0 * v.1 - r.1 * v.0) / denom;
                if (0.0..1.0).contains(&t) && s > 0.0 {
                    hits.push((t, id, if denom > 0.0 { -1 } else { 1 }));
                }
            }
            hits.sort_by(|a, b| a.0.total_cmp(&b.0));
            word.extend(hits.iter().map(|&(_, id, s)| (id, s)));
        }
        Some(word)
    }

    pub fn compare(&self, p1: &[GridCoord], p2: &[GridCoord]) -> HomotopyVerdict {
        match self.loop_signature(p1, p2) {
            None => HomotopyVerdict::Inconclusive,
            Some(s) if !s.is_zero() => HomotopyVerdict::Distinct,
            Some(_) => match self.loop_word(p1, p2) {
                None => HomotopyVerdict::Inconclusive,
                Some(w) if w.is_empty() => HomotopyVerdict::Homotopic,
                Some(_) => HomotopyVerdict::Distinct,
            },
        }
    }
}

/// Whether segment `a-b` (cell centers) passes within 1e-9 of `point`.
fn passes_through(a: GridCoord, b: GridCoord, point: (f64, f64)) -> bool {
    let p = (
        f64::from(a.x) + 0.5 - point.0,
        f64::from(a.y) + 0.5 - point.1,
    );
    let v = (f64::from(b.x - a.x), f64::from(b.y - a.y));
    let len2 = v.0 * v.0 + v.1 * v.1;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (-(p.0 * v.0 + p.1 * v.1) / len2).clamp(0.0, 1.0)
    };
    (p.0 + t * v.0).hypot(p.1 + t * v.1) < 1e-9
}

/// Whether `p1` and `p2` lie in different homotopy classes.
pub fn homotopy_distinct(map: &GridMap, p1: &[GridCoord], p2: &[GridCoord]) -> HomotopyVerdict {
    HomotopyOracle::new(map).compare(p1, p2)
}
