//! Find K topologically distinct, locally shortest paths across a city map.
//!
//! ```text
//! cargo run --example find_paths [K]
//! ```

use topopath::grid::GridCoord;
use topopath::harness::synth::city_blocks;
use topopath::search::{search_k_paths, SearchConfig};
use topopath::tangent::build_tangent_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: usize = std::env::args().nth(1).map_or(Ok(50), |s| s.parse())?;
    let (start, goal) = (GridCoord::new(59, 72), GridCoord::new(109, 214));
    let map = city_blocks(256, 256, 2, &[start, goal]);
    let graph = build_tangent_graph(&map);

    let result = search_k_paths(&map, &graph, start, goal, &SearchConfig::new(k))?;
    println!(
        "{} paths from {start} to {goal} in {:.1} ms ({} iterations, {:?})",
        result.paths.len(),
        result.elapsed.as_secs_f64() * 1e3,
        result.iterations,
        result.stop
    );
    for (i, path) in result.paths.iter().enumerate().take(10) {
        println!(
            "#{i:<3} length {:7.2}  {} waypoints",
            path.length,
            path.waypoints.len()
        );
    }
    if result.paths.len() > 10 {
        println!("... {} more", result.paths.len() - 10);
    }
    Ok(())
}
