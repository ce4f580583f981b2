//! Draw a map with its K paths as SVG.
//!
//! ```text
//! cargo run --example render_svg [out.svg]
//! ```

use topopath::grid::GridCoord;
use topopath::harness::svg::render_svg;
use topopath::harness::synth::city_blocks;
use topopath::search::{search_k_paths, SearchConfig};
use topopath::tangent::build_tangent_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "paths.svg".to_string());
    let (start, goal) = (GridCoord::new(59, 72), GridCoord::new(109, 214));
    let map = city_blocks(256, 256, 2, &[start, goal]);
    let graph = build_tangent_graph(&map);
    let result = search_k_paths(&map, &graph, start, goal, &SearchConfig::new(50))?;

    let paths: Vec<Vec<GridCoord>> = result.paths.iter().map(|p| p.waypoints.clone()).collect();
    render_svg(&map, &paths, Some((start, goal)), out.as_ref())?;
    println!("{} paths drawn to {out}", paths.len());
    Ok(())
}
