use std::path::{Path, PathBuf};

use tempfile::TempDir;
use topopath::cli::{run, FindPathsOutput};
use topopath::grid::GridMap;

const BLOCK_MAP: [&str; 8] = [
    "........", "........", "..@@@@..", "..@@@@..", "..@@@@..", "..@@@@..", "........", "........",
];

fn topopath(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("topopath").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A temp dir holding `block.map` and its built graph `block.tgrf`.
fn workspace() -> (TempDir, PathBuf, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("block.map");
    let graph = dir.path().join("block.tgrf");
    std::fs::write(&map, GridMap::from_rows(&BLOCK_MAP).to_movingai()).unwrap();
    let (code, out, err) = topopath(&["build-graph", "--map", s(&map), "--out", s(&graph)]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("nodes "), "{out}");
    (dir, map, graph)
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("block.map");
    let graph = dir.path().join("block.tgrf");
    std::fs::write(&map, GridMap::from_rows(&BLOCK_MAP).to_movingai()).unwrap();
    let (_, built, _) = topopath(&["build-graph", "--map", s(&map), "--out", s(&graph)]);
    let words: Vec<&str> = built.split_whitespace().collect();
    let (code, out, _) = topopath(&["verify", "--map", s(&map), "--graph", s(&graph)]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        format!("ok: {} nodes, {} edges", words[1], words[3])
    );
}

#[test]
fn find_paths_writes_json_to_stdout() {
    let (_dir, map, graph) = workspace();
    let (code, out, err) = topopath(&[
        "find-paths",
        "--map",
        s(&map),
        "--graph",
        s(&graph),
        "--start",
        "1,4",
        "--goal",
        "6,3",
        "-k",
        "2",
    ]);
    assert_eq!(code, 0, "{err}");
    let parsed: FindPathsOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.paths.len(), 2);
    assert!(parsed.paths[0].length <= parsed.paths[1].length);
    for p in &parsed.paths {
        assert_eq!(p.waypoints.first(), Some(&[1, 4]));
        assert_eq!(p.waypoints.last(), Some(&[6, 3]));
    }
    assert!(err.starts_with("2 paths in "), "{err}");
}

#[test]
fn find_paths_svg_has_one_polyline_per_path() {
    let (dir, map, graph) = workspace();
    let svg = dir.path().join("out.svg");
    let json = dir.path().join("out.json");
    let (code, out, _) = topopath(&[
        "find-paths",
        "--map",
        s(&map),
        "--graph",
        s(&graph),
        "--start",
        "0,0",
        "--goal",
        "7,7",
        "-k",
        "5",
        "--svg",
        s(&svg),
        "--json",
        s(&json),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let result: FindPathsOutput =
        serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    let text = std::fs::read_to_string(svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let polylines = doc
        .descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .count();
    assert_eq!(polylines, result.paths.len());
}

#[test]
fn blocked_goal_is_an_input_error_naming_the_cell() {
    let (_dir, map, graph) = workspace();
    let (code, out, err) = topopath(&[
        "find-paths",
        "--map",
        s(&map),
        "--graph",
        s(&graph),
        "--start",
        "0,0",
        "--goal",
        "3,3",
        "-k",
        "4",
    ]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("(3,3)"), "{err}");
}

#[test]
fn corrupted_graph_reports_a_byte_offset() {
    let (_dir, map, graph) = workspace();
    let mut bytes = std::fs::read(&graph).unwrap();
    bytes.truncate(bytes.len() - 3);
    std::fs::write(&graph, bytes).unwrap();
    let (code, _, err) = topopath(&["verify", "--map", s(&map), "--graph", s(&graph)]);
    assert_eq!(code, 1);
    assert!(err.contains("byte offset"), "{err}");
}

#[test]
fn missing_map_and_bad_arguments_exit_with_one() {
    let (code, _, err) = topopath(&[
        "verify",
        "--map",
        "/no/such.map",
        "--graph",
        "/no/such.tgrf",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("/no/such.map"));
    let (code, _, _) = topopath(&["find-paths", "--map", "a", "--graph", "b", "--start", "1;2"]);
    assert_eq!(code, 1);
    let (_dir, map, graph) = workspace();
    let (code, _, err) = topopath(&[
        "find-paths",
        "--map",
        s(&map),
        "--graph",
        s(&graph),
        "--start",
        "0,0",
        "--goal",
        "7,7",
        "-k",
        "0",
    ]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn help_lists_every_subcommand() {
    let (code, out, _) = topopath(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["build-graph", "find-paths", "bench", "verify"] {
        assert!(out.contains(sub), "{out}");
    }
}

#[test]
fn bench_writes_matching_csv_and_json() {
    let (dir, map, _graph) = workspace();
    let csv = dir.path().join("bench.csv");
    let json = dir.path().join("bench.json");
    let (code, out, err) = topopath(&[
        "bench",
        "--maps",
        s(&map),
        "--pairs",
        "3",
        "--seed",
        "9",
        "-k",
        "1,4",
        "--csv",
        s(&csv),
        "--json",
        s(&json),
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "6 records");
    let records = topopath::harness::bench::read_csv(std::fs::File::open(csv).unwrap()).unwrap();
    assert_eq!(records.len(), 6);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    let aggregates = report["aggregates"].as_array().unwrap();
    assert_eq!(aggregates.len(), 2);
    for a in aggregates {
        let k = a["k"].as_u64().unwrap() as usize;
        let group: Vec<_> = records.iter().filter(|r| r.k == k).collect();
        assert_eq!(a["runs"].as_u64().unwrap() as usize, group.len());
        let mean = group.iter().map(|r| r.elapsed_ms).sum::<f64>() / group.len() as f64;
        assert!((a["mean_total_ms"].as_f64().unwrap() - mean).abs() < 1e-9);
    }
    // The map's cached graph sits next to it, so nothing was rebuilt.
    assert!(report["builds"][0]["build_ms"].is_null());
}
