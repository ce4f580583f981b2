//! Benchmark protocol: seeded endpoint pairs on each map, a query per
//! pair and K, one CSV row per query and per-(map, K) aggregates.
//!
//! Queries run one after another so their timings do not compete for
//! cores.

use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::endpoints::sample_endpoints;
use crate::grid::{parse_movingai_map, GridMap};
use crate::search::{search_k_paths, SearchConfig};
use crate::tangent::{build_tangent_graph, deserialize_graph, TangentGraph};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub maps: Vec<PathBuf>,
    /// Endpoint pairs per map.
    pub pairs: usize,
    pub k_values: Vec<usize>,
    pub seed: u64,
    /// Wall-clock budget per query.
    pub budget: Duration,
}

impl BenchConfig {
    pub fn new(maps: Vec<PathBuf>, pairs: usize, k_values: Vec<usize>, seed: u64) -> Self {
        BenchConfig {
            maps,
            pairs,
            k_values,
            seed,
            budget: Duration::from_secs(10),
        }
    }
}

/// One query. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub map: String,
    pub start_x: i32,
    pub start_y: i32,
    pub goal_x: i32,
    pub goal_y: i32,
    pub k: usize,
    pub elapsed_ms: f64,
    pub paths_found: usize,
    /// `elapsed_ms` over the paths found, or over one when none were.
    pub mean_path_ms: f64,
    pub truncated: bool,
    pub peak_primary: usize,
    pub peak_secondary: usize,
}

impl BenchRecord {
    /// Enough paths, or every class found before the budget ran out.
    pub fn success(&self) -> bool {
        self.paths_found >= self.k || !self.truncated
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub map: String,
    pub k: usize,
    pub runs: usize,
    pub mean_total_ms: f64,
    pub mean_path_ms: f64,
    pub success_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapBuild {
    pub map: String,
    /// Graph build time, or `None` when a cached graph was loaded.
    pub build_ms: Option<f64>,
    pub nodes: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub aggregates: Vec<Aggregate>,
    pub builds: Vec<MapBuild>,
    /// Maps that were skipped, with the reason.
    pub warnings: Vec<String>,
}

/// The cached graph next to `map_path` (same name, `.tgrf` extension) when
/// it exists and matches the map, else a freshly built one with its build
/// time.
pub fn load_or_build_graph(
    map_path: &Path,
    map: &GridMap,
) -> Result<(TangentGraph, Option<Duration>), String> {
    let cache = map_path.with_extension("tgrf");
    if let Ok(bytes) = std::fs::read(&cache) {
        let graph = deserialize_graph(&bytes).map_err(|e| format!("{}: {e}", cache.display()))?;
        if (graph.width(), graph.height()) != (map.width(), map.height()) {
            return Err(format!(
                "{}: graph is {}x{} but the map is {}x{}",
                cache.display(),
                graph.width(),
                graph.height(),
                map.width(),
                map.height()
            ));
        }
        return Ok((graph, None));
    }
    let started = Instant::now();
    let graph = build_tangent_graph(map);
    Ok((graph, Some(started.elapsed())))
}

fn map_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Runs every map x pair x K query.
pub fn run_bench(config: &BenchConfig) -> BenchReport {
    let mut report = BenchReport::default();
    for path in &config.maps {
        let name = map_name(path);
        let text = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                report
                    .warnings
                    .push(format!("skipping {}: {e}", path.display()));
                continue;
            }
        };
        let map = match parse_movingai_map(&text) {
            Ok(map) => map,
            Err(e) => {
                report
                    .warnings
                    .push(format!("skipping {}: {e}", path.display()));
                continue;
            }
        };
        let (graph, built) = match load_or_build_graph(path, &map) {
            Ok(g) => g,
            Err(e) => {
                report.warnings.push(format!("skipping {e}"));
                continue;
            }
        };
        report.builds.push(MapBuild {
            map: name.clone(),
            build_ms: built.map(millis),
            nodes: graph.node_count(),
        });
        let pairs = match sample_endpoints(&map, config.pairs, config.seed) {
            Ok(pairs) => pairs,
            Err(e) => {
                report
                    .warnings
                    .push(format!("skipping {}: {e}", path.display()));
                continue;
            }
        };
        for &(start, goal) in &pairs {
            for &k in &config.k_values {
                let search = SearchConfig {
                    time_budget: Some(config.budget),
                    ..SearchConfig::new(k)
                };
                let result = match search_k_paths(&map, &graph, start, goal, &search) {
                    Ok(result) => result,
                    Err(e) => {
                        report
                            .warnings
                            .push(format!("{name} {start}->{goal} k={k}: {e}"));
                        continue;
                    }
                };
                let elapsed_ms = millis(result.elapsed);
                let found = result.paths.len();
                report.records.push(BenchRecord {
                    map: name.clone(),
                    start_x: start.x,
                    start_y: start.y,
                    goal_x: goal.x,
                    goal_y: goal.y,
                    k,
                    elapsed_ms,
                    paths_found: found,
                    mean_path_ms: elapsed_ms / found.max(1) as f64,
                    truncated: result.truncated(),
                    peak_primary: result.peak_primary(),
                    peak_secondary: result.peak_secondary(),
                });
            }
        }
    }
    report.aggregates = aggregate(&report.records);
    report
}

/// Per-(map, K) means and success rate, in order of first appearance.
pub fn aggregate(records: &[BenchRecord]) -> Vec<Aggregate> {
    let mut keys: Vec<(String, usize)> = Vec::new();
    for r in records {
        if !keys.iter().any(|(m, k)| *m == r.map && *k == r.k) {
            keys.push((r.map.clone(), r.k));
        }
    }
    keys.into_iter()
        .map(|(map, k)| {
            let group: Vec<&BenchRecord> = records
                .iter()
                .filter(|r| r.map == map && r.k == k)
                .collect();
            let n = group.len() as f64;
            Aggregate {
                runs: group.len(),
                mean_total_ms: group.iter().map(|r| r.elapsed_ms).sum::<f64>() / n,
                mean_path_ms: group.iter().map(|r| r.mean_path_ms).sum::<f64>() / n,
                success_rate: group.iter().filter(|r| r.success()).count() as f64 / n,
                map,
                k,
            }
        })
        .collect()
}

pub fn write_csv<W: io::Write>(records: &[BenchRecord], out: W) -> Result<(), csv::Error> {
    let mut writer = csv::Writer::from_writer(out);
    if records.is_empty() {
        writer.write_record([
            "map",
            "start_x",
            "start_y",
            "goal_x",
            "goal_y",
            "k",
            "elapsed_ms",
            "paths_found",
            "mean_path_ms",
            "truncated",
            "peak_primary",
            "peak_secondary",
        ])?;
    }
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRecord>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}
