//! Check that returned paths are pairwise non-homotopic with the
//! independent oracle: winding numbers around each obstacle, refined by
//! the reduced sequence of obstacle crossings.
//!
//! ```text
//! cargo run --example homotopy_oracle
//! ```

use topopath::grid::GridCoord;
use topopath::harness::homotopy::{HomotopyOracle, HomotopyVerdict};
use topopath::harness::synth::random_obstacles;
use topopath::search::{search_k_paths, SearchConfig};
use topopath::tangent::build_tangent_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = random_obstacles(64, 64, 12, 7);
    let graph = build_tangent_graph(&map);
    let oracle = HomotopyOracle::new(&map);
    println!("{} obstacle components", oracle.components().len());

    let (start, goal) = (GridCoord::new(1, 1), GridCoord::new(62, 62));
    let result = search_k_paths(&map, &graph, start, goal, &SearchConfig::new(16))?;
    let paths: Vec<_> = result.paths.iter().map(|p| &p.waypoints).collect();

    let (mut distinct, mut other) = (0, 0);
    for (i, a) in paths.iter().enumerate() {
        for b in &paths[i + 1..] {
            match oracle.compare(a, b) {
                HomotopyVerdict::Distinct => distinct += 1,
                verdict => {
                    other += 1;
                    println!("{verdict:?}: {a:?} vs {b:?}");
                }
            }
        }
    }
    println!(
        "{} paths, {distinct} pairs distinct, {other} not",
        paths.len()
    );

    // a path compared with itself is always homotopic
    assert_eq!(
        oracle.compare(paths[0], paths[0]),
        HomotopyVerdict::Homotopic
    );
    Ok(())
}
