//! Run the benchmark protocol on two generated maps and print the
//! per-(map, K) aggregates. Writes the maps, CSV and JSON to a scratch
//! directory.
//!
//! ```text
//! cargo run --example bench
//! ```

use std::path::PathBuf;

use topopath::harness::bench::{run_bench, write_csv, BenchConfig};
use topopath::harness::synth::{city_blocks, random_obstacles};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("topopath-bench-example");
    std::fs::create_dir_all(&dir)?;
    let maps: Vec<PathBuf> = [
        ("random64", random_obstacles(64, 64, 15, 3)),
        ("city128", city_blocks(128, 128, 5, &[])),
    ]
    .into_iter()
    .map(|(name, map)| {
        let path = dir.join(format!("{name}.map"));
        std::fs::write(&path, map.to_movingai()).map(|_| path)
    })
    .collect::<Result<_, _>>()?;

    let config = BenchConfig::new(maps, 5, vec![10, 40, 160], 42);
    let report = run_bench(&config);
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for b in &report.builds {
        println!("{}: {} nodes, build {:?} ms", b.map, b.nodes, b.build_ms);
    }
    println!("map        k   runs  mean ms  per-path ms  success");
    for a in &report.aggregates {
        println!(
            "{:<9} {:>4} {:>5} {:>8.2} {:>12.3} {:>8.2}",
            a.map, a.k, a.runs, a.mean_total_ms, a.mean_path_ms, a.success_rate
        );
    }

    let csv = dir.join("bench.csv");
    write_csv(&report.records, std::fs::File::create(&csv)?)?;
    std::fs::write(
        dir.join("bench.json"),
        serde_json::to_string_pretty(&report.aggregates)?,
    )?;
    println!("records in {}", csv.display());
    Ok(())
}
