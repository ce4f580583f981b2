//! Seeded start/goal sampling for benchmark runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::grid::{GridCoord, GridMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SampleError {
    #[error("map has {0} passable cells; at least 2 are needed")]
    TooFewPassable(usize),
    #[error("found only {found} of {requested} connected pairs within {attempts} attempts")]
    Insufficient {
        found: usize,
        requested: usize,
        attempts: usize,
    },
}

/// Labels 4-connected passable regions. Diagonal squeezes between two
/// obstacle corners are closed to straight-line motion, so 4-connectivity
/// is the matching notion of reachability.
pub fn connectivity_labels(map: &GridMap) -> Vec<Option<u32>> {
    let w = map.width() as usize;
    let mut labels = vec![None; w * map.height() as usize];
    let mut next = 0;
    let mut stack = Vec::new();
    for g in map.passable_cells() {
        let i = g.y as usize * w + g.x as usize;
        if labels[i].is_some() {
            continue;
        }
        labels[i] = Some(next);
        stack.push(g);
        while let Some(c) = stack.pop() {
            for n in [
                GridCoord::new(c.x + 1, c.y),
                GridCoord::new(c.x - 1, c.y),
                GridCoord::new(c.x, c.y + 1),
                GridCoord::new(c.x, c.y - 1),
            ] {
                if map.is_passable(n) {
                    let j = n.y as usize * w + n.x as usize;
                    if labels[j].is_none() {
                        labels[j] = Some(next);
                        stack.push(n);
                    }
                }
            }
        }
        next += 1;
    }
    labels
}

/// `n` pairs of distinct, mutually reachable passable cells, drawn
/// uniformly with a seeded generator. Gives up after `100 n` draws.
pub fn sample_endpoints(
    map: &GridMap,
    n: usize,
    seed: u64,
) -> Result<Vec<(GridCoord, GridCoord)>, SampleError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let cells: Vec<GridCoord> = map.passable_cells().collect();
    if cells.len() < 2 {
        return Err(SampleError::TooFewPassable(cells.len()));
    }
    let labels = connectivity_labels(map);
    let label = |g: GridCoord| labels[g.y as usize * map.width() as usize + g.x as usize];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = 100 * n;
    let mut pairs = Vec::with_capacity(n);
    for _ in 0..attempts {
        let s = cells[rng.gen_range(0..cells.len())];
        let g = cells[rng.gen_range(0..cells.len())];
        if s != g && label(s) == label(g) {
            pairs.push((s, g));
            if pairs.len() == n {
                return Ok(pairs);
            }
        }
    }
    Err(SampleError::Insufficient {
        found: pairs.len(),
        requested: n,
        attempts,
    })
}
