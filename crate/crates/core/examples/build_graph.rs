//! Build the tangent graph of a map, store it, and load it back.
//!
//! ```text
//! cargo run --example build_graph [path/to/map.map]
//! ```
//! Without an argument a generated 256x256 city map is used.

use std::time::Instant;

use topopath::grid::parse_movingai_map;
use topopath::harness::synth::city_blocks;
use topopath::tangent::{build_tangent_graph, deserialize_graph, serialize_graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = match std::env::args().nth(1) {
        Some(path) => parse_movingai_map(&std::fs::read_to_string(path)?)?,
        None => city_blocks(256, 256, 2, &[]),
    };
    println!(
        "map {}x{}, {} passable cells",
        map.width(),
        map.height(),
        map.passable_count()
    );

    let started = Instant::now();
    let graph = build_tangent_graph(&map);
    println!(
        "graph: {} nodes, {} edges, built in {:.0} ms",
        graph.node_count(),
        graph.edge_count(),
        started.elapsed().as_secs_f64() * 1e3
    );

    let bytes = serialize_graph(&graph);
    let loaded = deserialize_graph(&bytes)?;
    assert_eq!(loaded, graph);
    assert_eq!(serialize_graph(&loaded), bytes);
    println!("serialized to {} bytes, round trip exact", bytes.len());

    graph.validate(&map)?;
    println!("all edges in line of sight and tangent");
    Ok(())
}
