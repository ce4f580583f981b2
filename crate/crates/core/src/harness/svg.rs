//! SVG drawings of a map with paths over it.
//!
//! One user unit is one cell: cell `(x, y)` covers `[x, x + 1] x [y, y + 1]`
//! and waypoints sit at cell centres.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::grid::{GridCoord, GridMap};

/// Stroke colours, cycled through in path order.
pub const PALETTE: [&str; 16] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45",
    "#469990", "#9a6324", "#800000", "#808000", "#000075", "#fabed4", "#ffd8b1", "#aaffc3",
];

/// The SVG text. `endpoints` marks the start with a filled circle and the
/// goal with a filled square.
pub fn svg_document(
    map: &GridMap,
    paths: &[Vec<GridCoord>],
    endpoints: Option<(GridCoord, GridCoord)>,
) -> String {
    let (w, h) = (map.width(), map.height());
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##);
    let mut cells = String::new();
    for g in map.cells().filter(|&g| !map.is_passable(g)) {
        let _ = write!(cells, "M{} {}h1v1h-1z", g.x, g.y);
    }
    if !cells.is_empty() {
        let _ = writeln!(out, r##"<path d="{cells}" fill="#303030"/>"##);
    }
    for (i, path) in paths.iter().enumerate() {
        let points: Vec<String> = path
            .iter()
            .map(|g| format!("{}.5,{}.5", g.x, g.y))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="0.3" stroke-linejoin="round"/>"#,
            points.join(" "),
            PALETTE[i % PALETTE.len()]
        );
    }
    if let Some((start, goal)) = endpoints {
        let _ = writeln!(
            out,
            r##"<circle cx="{}.5" cy="{}.5" r="0.6" fill="#00a000"/>"##,
            start.x, start.y
        );
        let _ = writeln!(
            out,
            r##"<rect x="{}" y="{}" width="1.2" height="1.2" fill="#d00000"/>"##,
            f64::from(goal.x) - 0.1,
            f64::from(goal.y) - 0.1
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Writes [`svg_document`] to `out`.
pub fn render_svg(
    map: &GridMap,
    paths: &[Vec<GridCoord>],
    endpoints: Option<(GridCoord, GridCoord)>,
    out: &Path,
) -> io::Result<()> {
    std::fs::write(out, svg_document(map, paths, endpoints))
}
