//! Grid-space primitives: occupancy maps, MovingAI parsing, frontier and
//! surface extraction, supercover line-of-sight, distances and angles.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer cell coordinate. Signed so that frontier cells past the map
/// border can be represented; such cells are always unpassable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct GridCoord {
    pub x: i32,
    pub y: i32,
}

impl GridCoord {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    /// Row-major key `(y, x)`, the canonical node ordering.
    pub fn row_major(self) -> (i32, i32) {
        (self.y, self.x)
    }
}

impl From<[i32; 2]> for GridCoord {
    fn from(v: [i32; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl From<GridCoord> for [i32; 2] {
    fn from(g: GridCoord) -> Self {
        [g.x, g.y]
    }
}

impl From<(i32, i32)> for GridCoord {
    fn from((x, y): (i32, i32)) -> Self {
        Self::new(x, y)
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct MapParseError {
    pub line: usize,
    pub kind: MapParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapParseErrorKind {
    #[error("expected `{0}` header")]
    MissingHeader(&'static str),
    #[error("invalid header value `{0}`")]
    BadHeaderValue(String),
    #[error("expected {expected} map rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row has {found} cells, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("unknown terrain character {0:?}")]
    UnknownTerrain(char),
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum GeometryError {
    #[error("zero-length ray at {0}")]
    ZeroLengthRay(GridCoord),
}

/// Dense 2D occupancy raster. Cells outside the map are unpassable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMap {
    width: u32,
    height: u32,
    blocked: Vec<bool>,
}

impl GridMap {
    /// A fully passable map.
    pub fn new(width: u32, height: u32) -> Self {
        assert!(width > 0 && height > 0, "map dimensions must be positive");
        Self {
            width,
            height,
            blocked: vec![false; width as usize * height as usize],
        }
    }

    /// Builds a map from text rows where `@` (and any of `OTW`) is
    /// unpassable and `.` is free. Row 0 is `y = 0`.
    pub fn from_rows(rows: &[&str]) -> Self {
        let height = rows.len() as u32;
        let width = rows.first().map_or(0, |r| r.chars().count()) as u32;
        let mut map = Self::new(width, height);
        for (y, row) in rows.iter().enumerate() {
            assert_eq!(row.chars().count() as u32, width, "ragged rows");
            for (x, c) in row.chars().enumerate() {
                let passable = terrain_passable(c).expect("unknown terrain character");
                map.set_blocked(GridCoord::new(x as i32, y as i32), !passable);
            }
        }
        map
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn contains(&self, g: GridCoord) -> bool {
        g.x >= 0 && g.y >= 0 && (g.x as u32) < self.width && (g.y as u32) < self.height
    }

    #[inline]
    fn index(&self, g: GridCoord) -> usize {
        g.y as usize * self.width as usize + g.x as usize
    }

    pub fn set_blocked(&mut self, g: GridCoord, blocked: bool) {
        assert!(
            self.contains(g),
            "{g} outside {}x{} map",
            self.width,
            self.height
        );
        let i = self.index(g);
        self.blocked[i] = blocked;
    }

    #[inline]
    pub fn is_passable(&self, g: GridCoord) -> bool {
        self.contains(g) && !self.blocked[self.index(g)]
    }

    /// Every in-bounds cell in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = GridCoord> + '_ {
        let w = self.width as i32;
        (0..self.height as i32).flat_map(move |y| (0..w).map(move |x| GridCoord::new(x, y)))
    }

    pub fn passable_cells(&self) -> impl Iterator<Item = GridCoord> + '_ {
        self.cells().filter(|&g| self.is_passable(g))
    }

    pub fn passable_count(&self) -> usize {
        self.blocked.iter().filter(|b| !**b).count()
    }

    /// Passable cell with at least one passable and one unpassable
    /// frontier cell.
    pub fn is_surface(&self, g: GridCoord) -> bool {
        if !self.is_passable(g) {
            return false;
        }
        let mut free = false;
        let mut occupied = false;
        for n in frontier(g) {
            if self.is_passable(n) {
                free = true;
            } else {
                occupied = true;
            }
        }
        free && occupied
    }

    pub fn has_unpassable_frontier(&self, g: GridCoord) -> bool {
        frontier(g).iter().any(|&n| !self.is_passable(n))
    }

    /// MovingAI text, with `@` for unpassable and `.` for free cells.
    pub fn to_movingai(&self) -> String {
        let mut out = format!(
            "type octile\nheight {}\nwidth {}\nmap\n",
            self.height, self.width
        );
        for y in 0..self.height as i32 {
            for x in 0..self.width as i32 {
                out.push(if self.is_passable(GridCoord::new(x, y)) {
                    '.'
                } else {
                    '@'
                });
            }
            out.push('\n');
        }
        out
    }
}

fn terrain_passable(c: char) -> Option<bool> {
    match c {
        '.' | 'G' | 'S' => Some(true),
        '@' | 'O' | 'T' | 'W' => Some(false),
        _ => None,
    }
}

/// Parses a MovingAI `.map` file.
pub fn parse_movingai_map(text: &str) -> Result<GridMap, MapParseError> {
    let total = text.lines().count();
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r')).enumerate();
    let err = |line: usize, kind| MapParseError {
        line: line + 1,
        kind,
    };

    let mut header = |key: &'static str| -> Result<(usize, Option<String>), MapParseError> {
        let (n, line) = lines
            .next()
            .ok_or_else(|| err(total, MapParseErrorKind::MissingHeader(key)))?;
        let mut parts = line.split_whitespace();
        if parts.next() != Some(key) {
            return Err(err(n, MapParseErrorKind::MissingHeader(key)));
        }
        Ok((n, parts.next().map(str::to_owned)))
    };

    let (n, ty) = header("type")?;
    if ty.is_none() {
        return Err(err(n, MapParseErrorKind::BadHeaderValue(String::new())));
    }
    let mut dimension = |key| -> Result<u32, MapParseError> {
        let (n, v) = header(key)?;
        let v = v.unwrap_or_default();
        match v.parse::<u32>() {
            Ok(d) if d > 0 => Ok(d),
            _ => Err(err(n, MapParseErrorKind::BadHeaderValue(v))),
        }
    };
    let height = dimension("height")?;
    let width = dimension("width")?;
    header("map")?;

    let mut map = GridMap::new(width, height);
    let mut rows = 0usize;
    let mut last_line = 4;
    for (n, line) in lines {
        last_line = n + 1;
        if rows == height as usize {
            if line.trim().is_empty() {
                continue;
            }
            return Err(err(
                n,
                MapParseErrorKind::RowCount {
                    expected: height as usize,
                    found: rows + 1,
                },
            ));
        }
        let found = line.chars().count();
        if found != width as usize {
            return Err(err(
                n,
                MapParseErrorKind::RowLength {
                    expected: width as usize,
                    found,
                },
            ));
        }
        for (x, c) in line.chars().enumerate() {
            let passable =
                terrain_passable(c).ok_or_else(|| err(n, MapParseErrorKind::UnknownTerrain(c)))?;
            if !passable {
                map.set_blocked(GridCoord::new(x as i32, rows as i32), true);
            }
        }
        rows += 1;
    }
    if rows != height as usize {
        return Err(MapParseError {
            line: last_line,
            kind: MapParseErrorKind::RowCount {
                expected: height as usize,
                found: rows,
            },
        });
    }
    Ok(map)
}

/// The 8 cells of the 3x3 block around `g`, excluding `g`.
pub fn frontier(g: GridCoord) -> [GridCoord; 8] {
    [
        GridCoord::new(g.x - 1, g.y - 1),
        GridCoord::new(g.x, g.y - 1),
        GridCoord::new(g.x + 1, g.y - 1),
        GridCoord::new(g.x - 1, g.y),
        GridCoord::new(g.x + 1, g.y),
        GridCoord::new(g.x - 1, g.y + 1),
        GridCoord::new(g.x, g.y + 1),
        GridCoord::new(g.x + 1, g.y + 1),
    ]
}

/// All surface cells in row-major order.
pub fn surface_grids(map: &GridMap) -> Vec<GridCoord> {
    map.cells().filter(|&g| map.is_surface(g)).collect()
}

/// Cells crossed by the segment between the centers of `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub a: GridCoord,
    pub b: GridCoord,
    pub cells: Vec<GridCoord>,
}

/// Supercover traversal: every cell whose closed unit square touches the
/// segment between cell centers, ordered from `a` to `b`.
pub fn trace_segment(a: GridCoord, b: GridCoord) -> Segment {
    let mut cells = Vec::new();
    let reversed = supercover(a, b, |c| {
        cells.push(c);
        true
    })
    .1;
    if reversed {
        cells.reverse();
    }
    Segment { a, b, cells }
}

/// Walks the supercover of `a -> b`, stopping as soon as `visit` returns
/// false. Returns whether the walk completed and whether the cells were
/// produced in `b -> a` order.
fn supercover(
    a: GridCoord,
    b: GridCoord,
    mut visit: impl FnMut(GridCoord) -> bool,
) -> (bool, bool) {
    if a.x == b.x {
        let step = if b.y >= a.y { 1 } else { -1 };
        let mut y = a.y;
        loop {
            if !visit(GridCoord::new(a.x, y)) {
                return (false, false);
            }
            if y == b.y {
                return (true, false);
            }
            y += step;
        }
    }
    let reversed = a.x > b.x;
    let descending = (b.y < a.y) != reversed;
    let done = column_runs((a.x, a.y), (b.x, b.y), |col, first, last| {
        if descending {
            (first..=last)
                .rev()
                .all(|row| visit(GridCoord::new(col, row)))
        } else {
            (first..=last).all(|row| visit(GridCoord::new(col, row)))
        }
    });
    (done, reversed)
}

/// Column-by-column decomposition of the supercover of a non-vertical
/// segment: for each column from the left endpoint to the right one, the
/// inclusive row range the segment touches. Stops when `visit` returns
/// false.
fn column_runs(a: (i32, i32), b: (i32, i32), mut visit: impl FnMut(i32, i32, i32) -> bool) -> bool {
    debug_assert_ne!(a.0, b.0);
    let (p, q) = if a.0 < b.0 { (a, b) } else { (b, a) };
    let dx = i64::from(q.0 - p.0);
    let dy = i64::from(q.1 - p.1);
    // Work in half-cell units: y at abscissa X is num(2X) / (2 dx).
    let denom = 2 * dx;
    let num = |two_x: i64| (2 * i64::from(p.1) + 1) * dx + (two_x - 2 * i64::from(p.0) - 1) * dy;
    let (y_min, y_max) = (i64::from(p.1.min(q.1)), i64::from(p.1.max(q.1)));

    for col in p.0..=q.0 {
        let c = i64::from(col);
        let lo_x = if col == p.0 { 2 * c + 1 } else { 2 * c };
        let hi_x = if col == q.0 { 2 * c + 1 } else { 2 * c + 2 };
        let (y0, y1) = (num(lo_x), num(hi_x));
        let (lo, hi) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
        let first = (-(-lo).div_euclid(denom) - 1).max(y_min);
        let last = hi.div_euclid(denom).min(y_max);
        if !visit(col, first as i32, last as i32) {
            return false;
        }
    }
    true
}

/// Whether the segment between the centers of `a` and `b` touches the
/// closed unit square of `cell`. Exact.
pub fn segment_touches_cell(a: GridCoord, b: GridCoord, cell: GridCoord) -> bool {
    // doubled coordinates keep everything integral
    let (ax, ay) = (2 * i64::from(a.x) + 1, 2 * i64::from(a.y) + 1);
    let (bx, by) = (2 * i64::from(b.x) + 1, 2 * i64::from(b.y) + 1);
    let (x0, y0) = (2 * i64::from(cell.x), 2 * i64::from(cell.y));
    let (x1, y1) = (x0 + 2, y0 + 2);
    if ax.max(bx) < x0 || ax.min(bx) > x1 || ay.max(by) < y0 || ay.min(by) > y1 {
        return false;
    }
    let (dx, dy) = (bx - ax, by - ay);
    let side = |px: i64, py: i64| (dx * (py - ay) - dy * (px - ax)).signum();
    let s = [side(x0, y0), side(x1, y0), side(x0, y1), side(x1, y1)];
    !(s.iter().all(|&v| v > 0) || s.iter().all(|&v| v < 0))
}

/// Prefix sums of blocked cells per row and per column, so each run of
/// the supercover is checked in constant time. Answers the same question
/// as [`line_of_sight`].
#[derive(Debug, Clone)]
pub struct SightIndex {
    width: usize,
    height: usize,
    /// `row_prefix[y * (width + 1) + x]`: blocked cells in row `y` left of `x`.
    row_prefix: Vec<u32>,
    /// `col_prefix[x * (height + 1) + y]`: blocked cells in column `x` above `y`.
    col_prefix: Vec<u32>,
}

impl SightIndex {
    pub fn new(map: &GridMap) -> Self {
        let (w, h) = (map.width as usize, map.height as usize);
        let mut row_prefix = vec![0u32; h * (w + 1)];
        let mut col_prefix = vec![0u32; w * (h + 1)];
        for y in 0..h {
            for x in 0..w {
                let b = u32::from(map.blocked[y * w + x]);
                row_prefix[y * (w + 1) + x + 1] = row_prefix[y * (w + 1) + x] + b;
                col_prefix[x * (h + 1) + y + 1] = col_prefix[x * (h + 1) + y] + b;
            }
        }
        Self {
            width: w,
            height: h,
            row_prefix,
            col_prefix,
        }
    }

    #[inline]
    fn column_clear(&self, x: i32, y0: i32, y1: i32) -> bool {
        let base = x as usize * (self.height + 1);
        self.col_prefix[base + y1 as usize + 1] == self.col_prefix[base + y0 as usize]
    }

    #[inline]
    fn row_clear(&self, y: i32, x0: i32, x1: i32) -> bool {
        let base = y as usize * (self.width + 1);
        self.row_prefix[base + x1 as usize + 1] == self.row_prefix[base + x0 as usize]
    }

    fn inside(&self, g: GridCoord) -> bool {
        g.x >= 0 && g.y >= 0 && (g.x as usize) < self.width && (g.y as usize) < self.height
    }

    pub fn line_of_sight(&self, a: GridCoord, b: GridCoord) -> bool {
        if !self.inside(a) || !self.inside(b) {
            return false;
        }
        let (dx, dy) = ((b.x - a.x).abs(), (b.y - a.y).abs());
        if dx == 0 {
            return self.column_clear(a.x, a.y.min(b.y), a.y.max(b.y));
        }
        if dy == 0 {
            return self.row_clear(a.y, a.x.min(b.x), a.x.max(b.x));
        }
        if dx <= dy {
            // few columns, each a vertical run
            column_runs((a.x, a.y), (b.x, b.y), |x, y0, y1| {
                self.column_clear(x, y0, y1)
            })
        } else {
            // transposed: few rows, each a horizontal run
            column_runs((a.y, a.x), (b.y, b.x), |y, x0, x1| {
                self.row_clear(y, x0, x1)
            })
        }
    }
}

/// True iff no cell of the supercover of `a -> b` is unpassable.
pub fn line_of_sight(map: &GridMap, a: GridCoord, b: GridCoord) -> bool {
    supercover(a, b, |c| map.is_passable(c)).0
}

pub fn distance(a: GridCoord, b: GridCoord) -> f64 {
    let dx = f64::from(a.x - b.x);
    let dy = f64::from(a.y - b.y);
    dx.hypot(dy)
}

/// Angle at `g2` between rays `g2 -> g1` and `g2 -> g3`, in `[0, pi]`.
pub fn angle(g1: GridCoord, g2: GridCoord, g3: GridCoord) -> Result<f64, GeometryError> {
    if g1 == g2 {
        return Err(GeometryError::ZeroLengthRay(g1));
    }
    if g3 == g2 {
        return Err(GeometryError::ZeroLengthRay(g3));
    }
    let u = (f64::from(g1.x - g2.x), f64::from(g1.y - g2.y));
    let v = (f64::from(g3.x - g2.x), f64::from(g3.y - g2.y));
    Ok(vector_angle(u, v))
}

/// Unsigned angle between two non-zero vectors.
pub(crate) fn vector_angle(u: (f64, f64), v: (f64, f64)) -> f64 {
    let dot = u.0 * v.0 + u.1 * v.1;
    let norm = u.0.hypot(u.1) * v.0.hypot(v.1);
    (dot / norm).clamp(-1.0, 1.0).acos()
}
