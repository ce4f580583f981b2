//! The priority limit keeps at most K partial paths in play per iteration;
//! plain breadth-first search lets the queue grow with every level.
//!
//! ```text
//! cargo run --example queue_limitation
//! ```

use std::time::Duration;

use topopath::grid::GridCoord;
use topopath::harness::synth::city_blocks;
use topopath::search::{queue_bound_property, search_k_paths, SearchConfig};
use topopath::tangent::build_tangent_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (start, goal) = (GridCoord::new(59, 72), GridCoord::new(109, 214));
    let map = city_blocks(256, 256, 2, &[start, goal]);
    let graph = build_tangent_graph(&map);
    let k = 200;

    let limited = search_k_paths(&map, &graph, start, goal, &SearchConfig::new(k))?;
    println!(
        "limited:   {} paths in {:.1} ms, peak primary {}, peak secondary {}, bound held: {}",
        limited.paths.len(),
        limited.elapsed.as_secs_f64() * 1e3,
        limited.peak_primary(),
        limited.peak_secondary(),
        queue_bound_property(&limited.queue_trace, k)
    );

    let plain = SearchConfig {
        priority_limit: false,
        time_budget: Some(Duration::from_secs(20)),
        ..SearchConfig::new(k)
    };
    let unlimited = search_k_paths(&map, &graph, start, goal, &plain)?;
    println!(
        "unlimited: {} paths in {:.1} ms, peak primary {}",
        unlimited.paths.len(),
        unlimited.elapsed.as_secs_f64() * 1e3,
        unlimited.peak_primary()
    );

    println!("primary queue size per iteration (limited):");
    for (i, s) in limited.queue_trace.iter().enumerate() {
        println!(
            "  {i:>3}: {:>4} primary, {:>6} secondary",
            s.primary, s.secondary
        );
    }
    Ok(())
}
