//! Seeded synthetic maps for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{GridCoord, GridMap};

#[derive(Debug, Clone, Copy)]
struct Rect {
    x0: i32,
    y0: i32,
    x1: i32,
    y1: i32,
}

impl Rect {
    fn inflated(self, m: i32) -> Rect {
        Rect {
            x0: self.x0 - m,
            y0: self.y0 - m,
            x1: self.x1 + m,
            y1: self.y1 + m,
        }
    }

    fn overlaps(self, o: Rect) -> bool {
        self.x0 <= o.x1 && o.x0 <= self.x1 && self.y0 <= o.y1 && o.y0 <= self.y1
    }

    fn fill(self, map: &mut GridMap) {
        for y in self.y0..=self.y1 {
            for x in self.x0..=self.x1 {
                map.set_blocked(GridCoord::new(x, y), true);
            }
        }
    }
}

/// A map with up to `components` separate obstacles (rectangles or L/T
/// shapes), none touching the border, each at least two cells from the
/// others. Returns fewer obstacles when the map is too crowded to place
/// them all.
pub fn random_obstacles(width: u32, height: u32, components: usize, seed: u64) -> GridMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = GridMap::new(width, height);
    let (w, h) = (width as i32, height as i32);
    let mut placed: Vec<Rect> = Vec::new();
    let max_side = (w.min(h) / 6).max(2);
    for _ in 0..components * 50 {
        if placed.len() == components {
            break;
        }
        let a = Rect::random(&mut rng, w, h, max_side);
        let mut parts = vec![a];
        if rng.gen_bool(0.4) {
            // a second arm sharing a corner region with the first
            let bw = rng.gen_range(1..=max_side);
            let bh = rng.gen_range(1..=max_side);
            let x0 = rng.gen_range(a.x0..=a.x1);
            let y0 = rng.gen_range(a.y0..=a.y1);
            let b = Rect {
                x0,
                y0,
                x1: (x0 + bw - 1).min(w - 3),
                y1: (y0 + bh - 1).min(h - 3),
            };
            parts.push(b);
        }
        let bbox = parts.iter().skip(1).fold(parts[0], |acc, r| Rect {
            x0: acc.x0.min(r.x0),
            y0: acc.y0.min(r.y0),
            x1: acc.x1.max(r.x1),
            y1: acc.y1.max(r.y1),
        });
        if placed.iter().any(|p| p.inflated(2).overlaps(bbox)) {
            continue;
        }
        for r in &parts {
            r.fill(&mut map);
        }
        placed.push(bbox);
    }
    map
}

impl Rect {
    fn random(rng: &mut ChaCha8Rng, w: i32, h: i32, max_side: i32) -> Rect {
        let rw = rng.gen_range(1..=max_side);
        let rh = rng.gen_range(1..=max_side);
        let x0 = rng.gen_range(2..=(w - 3 - rw).max(2));
        let y0 = rng.gen_range(2..=(h - 3 - rh).max(2));
        Rect {
            x0,
            y0,
            x1: (x0 + rw - 1).min(w - 3),
            y1: (y0 + rh - 1).min(h - 3),
        }
    }
}

/// Street-grid city: irregular blocks separated by streets, each block
/// split into buildings with narrow alleys, occasional open squares.
/// The cells in `keep_free` (and their 3x3 surroundings) are cleared.
pub fn city_blocks(width: u32, height: u32, seed: u64, keep_free: &[GridCoord]) -> GridMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = GridMap::new(width, height);
    let xs = street_cuts(&mut rng, width as i32);
    let ys = street_cuts(&mut rng, height as i32);
    for bx in xs.windows(2) {
        for by in ys.windows(2) {
            let block = Rect {
                x0: bx[0].1,
                y0: by[0].1,
                x1: bx[1].0 - 1,
                y1: by[1].0 - 1,
            };
            if block.x1 < block.x0 || block.y1 < block.y0 || rng.gen_bool(0.08) {
                continue;
            }
            let mut pieces = vec![block];
            for _ in 0..rng.gen_range(0..3) {
                let i = rng.gen_range(0..pieces.len());
                let r = pieces[i];
                let alley = rng.gen_range(1..=2);
                if r.x1 - r.x0 >= r.y1 - r.y0 && r.x1 - r.x0 > 8 {
                    let cut = rng.gen_range(r.x0 + 3..=r.x1 - 3 - alley);
                    pieces[i] = Rect { x1: cut - 1, ..r };
                    pieces.push(Rect {
                        x0: cut + alley,
                        ..r
                    });
                } else if r.y1 - r.y0 > 8 {
                    let cut = rng.gen_range(r.y0 + 3..=r.y1 - 3 - alley);
                    pieces[i] = Rect { y1: cut - 1, ..r };
                    pieces.push(Rect {
                        y0: cut + alley,
                        ..r
                    });
                }
            }
            for p in pieces {
                p.fill(&mut map);
                // courtyards and notches keep the outlines irregular
                if rng.gen_bool(0.3) && p.x1 - p.x0 > 6 && p.y1 - p.y0 > 6 {
                    let cx = rng.gen_range(p.x0 + 2..=p.x1 - 4);
                    let cy = rng.gen_range(p.y0 + 2..=p.y1 - 4);
                    clear(
                        &mut map,
                        Rect {
                            x0: cx,
                            y0: cy,
                            x1: cx + 1,
                            y1: cy + 1,
                        },
                    );
                }
                if rng.gen_bool(0.4) {
                    let nx = if rng.gen_bool(0.5) {
                        p.x0
                    } else {
                        (p.x1 - 1).max(p.x0)
                    };
                    let ny = if rng.gen_bool(0.5) {
                        p.y0
                    } else {
                        (p.y1 - 1).max(p.y0)
                    };
                    clear(
                        &mut map,
                        Rect {
                            x0: nx,
                            y0: ny,
                            x1: nx + 1,
                            y1: ny + 1,
                        },
                    );
                }
            }
        }
    }
    for &g in keep_free {
        clear(
            &mut map,
            Rect {
                x0: g.x - 1,
                y0: g.y - 1,
                x1: g.x + 1,
                y1: g.y + 1,
            },
        );
    }
    map
}

/// Street spans `(start, end)` along one axis; blocks lie between them.
fn street_cuts(rng: &mut ChaCha8Rng, extent: i32) -> Vec<(i32, i32)> {
    let mut cuts = vec![(0, rng.gen_range(2..6))];
    loop {
        let start = cuts.last().unwrap().1 + rng.gen_range(10..34);
        if start + 4 >= extent {
            break;
        }
        let end = start + rng.gen_range(2..7);
        cuts.push((start, end));
    }
    cuts.push((extent - rng.gen_range(2..6), extent));
    cuts
}

fn clear(map: &mut GridMap, r: Rect) {
    for y in r.y0..=r.y1 {
        for x in r.x0..=r.x1 {
            let g = GridCoord::new(x, y);
            if map.contains(g) {
                map.set_blocked(g, false);
            }
        }
    }
}
