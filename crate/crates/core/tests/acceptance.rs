//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if
//! any fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use topopath::harness::endpoints::sample_endpoints;
use topopath::harness::homotopy::{HomotopyOracle, HomotopyVerdict};
use topopath::harness::synth::random_obstacles;
use topopath::search::{queue_bound_property, search_k_paths, SearchConfig, SearchResult};
use topopath::tangent::{build_tangent_graph, deserialize_graph, serialize_graph, TangentGraph};

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, title: &str, outcome: &Outcome) {
    let verdict = if outcome.pass { "PASS" } else { "FAIL" };
    println!("{verdict} criterion {n}: {title} -- {}", outcome.detail);
}

struct CorpusQuery {
    paths: Vec<Vec<topopath::grid::GridCoord>>,
    lengths: Vec<f64>,
    oracle_shortest: Option<f64>,
    pairs_distinct: usize,
    pairs_inconclusive: usize,
    pairs_homotopic: usize,
    taut_failures: usize,
}

/// 50 maps x 4 seeded endpoint pairs, K = 16.
fn run_corpus() -> (Vec<CorpusQuery>, Duration) {
    let started = Instant::now();
    let mut queries = Vec::new();
    for i in 0..50 {
        let map = corpus_map(i);
        let graph = build_tangent_graph(&map);
        let oracle = HomotopyOracle::new(&map);
        for (s, g) in sample_endpoints(&map, 4, i).expect("corpus maps are connected enough") {
            let r = search_k_paths(&map, &graph, s, g, &SearchConfig::new(16)).unwrap();
            let paths: Vec<_> = r.paths.iter().map(|p| p.waypoints.clone()).collect();
            let mut q = CorpusQuery {
                lengths: r.paths.iter().map(|p| p.length).collect(),
                oracle_shortest: shortest_taut_length(&map, &graph, s, g, None),
                pairs_distinct: 0,
                pairs_inconclusive: 0,
                pairs_homotopic: 0,
                taut_failures: paths
                    .iter()
                    .filter(|p| !taut_and_free(&map, p) || !taut_chain(&map, p))
                    .count(),
                paths,
            };
            for a in 0..q.paths.len() {
                for b in a + 1..q.paths.len() {
                    match oracle.compare(&q.paths[a], &q.paths[b]) {
                        HomotopyVerdict::Distinct => q.pairs_distinct += 1,
                        HomotopyVerdict::Inconclusive => q.pairs_inconclusive += 1,
                        HomotopyVerdict::Homotopic => q.pairs_homotopic += 1,
                    }
                }
            }
            queries.push(q);
        }
    }
    (queries, started.elapsed())
}

fn criterion_1(queries: &[CorpusQuery], elapsed: Duration) -> Outcome {
    let multi = queries.iter().filter(|q| q.paths.len() >= 2).count();
    let pairs: usize = queries
        .iter()
        .map(|q| q.pairs_distinct + q.pairs_inconclusive + q.pairs_homotopic)
        .sum();
    let homotopic: usize = queries.iter().map(|q| q.pairs_homotopic).sum();
    let inconclusive: usize = queries.iter().map(|q| q.pairs_inconclusive).sum();
    let rate = inconclusive as f64 / pairs.max(1) as f64;
    Outcome {
        pass: homotopic == 0 && rate < 0.01 && elapsed < Duration::from_secs(120),
        detail: format!(
            "{} queries ({multi} with >= 2 paths), {pairs} pairs: {homotopic} homotopic, \
             {inconclusive} inconclusive ({:.3}%), corpus run {:.1} s",
            queries.len(),
            rate * 100.0,
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_2(queries: &[CorpusQuery]) -> Outcome {
    let mut agree = 0;
    let mut neither = 0;
    let mut worst = String::new();
    for q in queries {
        let found = q.lengths.iter().copied().reduce(f64::min);
        match (found, q.oracle_shortest) {
            (Some(a), Some(b)) if (a - b).abs() <= 1e-6 * b => agree += 1,
            (None, None) => {
                agree += 1;
                neither += 1;
            }
            (a, b) => {
                if worst.is_empty() {
                    worst = format!(", first disagreement: search {a:?} vs oracle {b:?}");
                }
            }
        }
    }
    Outcome {
        pass: agree == queries.len(),
        detail: format!(
            "{agree}/{} queries agree within 1e-6 relative ({neither} where neither finds a path){worst}",
            queries.len()
        ),
    }
}

fn criterion_3(queries: &[CorpusQuery]) -> Outcome {
    let total: usize = queries.iter().map(|q| q.paths.len()).sum();
    let failures: usize = queries.iter().map(|q| q.taut_failures).sum();
    Outcome {
        pass: failures == 0 && total > 0,
        detail: format!(
            "{} of {total} returned paths pass the segment sight, waypoint cone and corner-chain checks",
            total - failures
        ),
    }
}

struct City {
    map: topopath::grid::GridMap,
    label: String,
    graph: TangentGraph,
    build: Duration,
}

fn city() -> City {
    let (map, label) = city_map();
    let started = Instant::now();
    let graph = build_tangent_graph(&map);
    City {
        build: started.elapsed(),
        map,
        label,
        graph,
    }
}

fn city_query(city: &City, config: &SearchConfig) -> SearchResult {
    search_k_paths(&city.map, &city.graph, CITY_START, CITY_GOAL, config).unwrap()
}

fn criterion_4(city: &City) -> Outcome {
    let k = 200;
    let limited = city_query(city, &SearchConfig::new(k));
    let unlimited = city_query(
        city,
        &SearchConfig {
            priority_limit: false,
            time_budget: Some(Duration::from_secs(60)),
            ..SearchConfig::new(k)
        },
    );
    let bounded = queue_bound_property(&limited.queue_trace, k);
    Outcome {
        pass: bounded && unlimited.peak_primary() > limited.peak_primary(),
        detail: format!(
            "{}: limited peak primary {} over {} iterations (bound held: {bounded}), \
             unlimited peak {} ({:?})",
            city.label,
            limited.peak_primary(),
            limited.iterations,
            unlimited.peak_primary(),
            unlimited.stop
        ),
    }
}

/// Median wall time of three runs, and the path count of the last.
fn timed(city: &City, k: usize) -> (Duration, usize) {
    let mut times = Vec::new();
    let mut found = 0;
    for _ in 0..3 {
        let r = city_query(city, &SearchConfig::new(k));
        times.push(r.elapsed);
        found = r.paths.len();
    }
    times.sort();
    (times[1], found)
}

fn criterion_5(city: &City) -> Outcome {
    let (t200, n200) = timed(city, 200);
    let (t400, n400) = timed(city, 400);
    Outcome {
        pass: n200 >= 200
            && n400 >= 400
            && t200 <= Duration::from_millis(500)
            && t400 <= Duration::from_secs(1),
        detail: format!(
            "{}: {n200} paths in {:.1} ms (limit 500), {n400} paths in {:.1} ms (limit 1000), median of 3",
            city.label,
            t200.as_secs_f64() * 1e3,
            t400.as_secs_f64() * 1e3
        ),
    }
}

fn criterion_6(city: &City) -> Outcome {
    let bytes = serialize_graph(&city.graph).len();
    let nodes = city.graph.node_count();
    Outcome {
        pass: city.build <= Duration::from_secs(5)
            && (800..=3300).contains(&nodes)
            && (20_000..=300_000).contains(&bytes),
        detail: format!(
            "{}: built in {:.2} s, {nodes} nodes, {} edges, {bytes} bytes serialized",
            city.label,
            city.build.as_secs_f64(),
            city.graph.edge_count()
        ),
    }
}

fn criterion_7(city: &City) -> Outcome {
    let pairs = sample_endpoints(&city.map, 20, 42).expect("city endpoints");
    let mean_per_path = |k: usize| {
        let per: Vec<f64> = pairs
            .iter()
            .map(|&(s, g)| {
                let r =
                    search_k_paths(&city.map, &city.graph, s, g, &SearchConfig::new(k)).unwrap();
                r.elapsed.as_secs_f64() * 1e3 / r.paths.len().max(1) as f64
            })
            .collect();
        per.iter().sum::<f64>() / per.len() as f64
    };
    let (at10, at320) = (mean_per_path(10), mean_per_path(320));
    Outcome {
        pass: at320 <= at10,
        detail: format!(
            "{}: 20 pairs, mean per-path {at10:.4} ms at k=10, {at320:.4} ms at k=320",
            city.label
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut exact = 0;
    let mut nodes = 0;
    for seed in 0..100u64 {
        let side = 24 + (seed % 5) as u32 * 6;
        let map = random_obstacles(side, side + 4, 3 + (seed % 10) as usize, 5000 + seed);
        let graph = build_tangent_graph(&map);
        nodes += graph.node_count();
        let bytes = serialize_graph(&graph);
        let back = deserialize_graph(&bytes);
        if back.as_ref() == Ok(&graph) && serialize_graph(&back.unwrap()) == bytes {
            exact += 1;
        }
    }
    Outcome {
        pass: exact == 100,
        detail: format!(
            "{exact}/100 random graphs ({nodes} nodes total) round-trip and re-serialize byte for byte"
        ),
    }
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let map_path = dir.path().join("corpus7.map");
    let graph_path = dir.path().join("corpus7.tgrf");
    std::fs::write(&map_path, corpus_map(7).to_movingai()).unwrap();
    let bin = env!("CARGO_BIN_EXE_topopath");
    let built = Command::new(bin)
        .args(["build-graph", "--map"])
        .arg(&map_path)
        .arg("--out")
        .arg(&graph_path)
        .output()
        .unwrap();
    assert!(built.status.success(), "{built:?}");
    let run = |n: usize| {
        let out = dir.path().join(format!("run{n}.json"));
        let status = Command::new(bin)
            .args(["find-paths", "--map"])
            .arg(&map_path)
            .arg("--graph")
            .arg(&graph_path)
            .args(["--start", "1,1", "--goal", "62,60", "-k", "24", "--json"])
            .arg(&out)
            .output()
            .unwrap();
        assert!(status.status.success(), "{status:?}");
        let mut json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
        json["telemetry"]
            .as_object_mut()
            .unwrap()
            .remove("elapsed_ms");
        json
    };
    let (a, b) = (run(1), run(2));
    let n = a["paths"].as_array().map_or(0, Vec::len);
    Outcome {
        pass: a == b && n > 0,
        detail: format!(
            "two find-paths runs, {n} paths each, identical JSON apart from timing: {}",
            a == b
        ),
    }
}

fn main() {
    let mut all = true;
    let mut record = |n: usize, title: &str, outcome: Outcome| {
        report(n, title, &outcome);
        all &= outcome.pass;
    };

    let (queries, elapsed) = run_corpus();
    record(
        1,
        "pairwise distinct homotopy classes",
        criterion_1(&queries, elapsed),
    );
    record(
        2,
        "shortest path matches the independent oracle",
        criterion_2(&queries),
    );
    record(
        3,
        "returned paths are taut and collision-free",
        criterion_3(&queries),
    );

    let city = city();
    record(4, "primary queue bounded by K", criterion_4(&city));
    record(5, "desk-scale query time", criterion_5(&city));
    record(6, "graph construction scale", criterion_6(&city));
    record(7, "per-path cost falls with K", criterion_7(&city));
    record(8, "serialization round trip", criterion_8());
    record(9, "deterministic find-paths output", criterion_9());

    if !all {
        std::process::exit(1);
    }
}
