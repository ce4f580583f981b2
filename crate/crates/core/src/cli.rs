//! The `topopath` command line. [`run`] takes the arguments and the two
//! output streams so it can be driven in-process.
//!
//! Exit status: 0 on success, 1 on bad input (arguments, files, endpoints),
//! 2 on internal failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::grid::{parse_movingai_map, GridCoord, GridMap};
use crate::harness::bench::{run_bench, write_csv, BenchConfig};
use crate::harness::svg::render_svg;
use crate::search::{search_k_paths, SearchConfig, SearchResult};
use crate::tangent::{build_tangent_graph, deserialize_graph, serialize_graph, TangentGraph};

#[derive(Debug, Parser)]
#[command(
    name = "topopath",
    version,
    about = "Topologically distinct paths on grid maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the tangent graph of a map and write it in binary form.
    BuildGraph {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find K topologically distinct paths between two cells.
    FindPaths {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Start cell as X,Y.
        #[arg(long)]
        start: Cell,
        /// Goal cell as X,Y.
        #[arg(long)]
        goal: Cell,
        #[arg(short = 'k', value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Also draw the map and paths.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the result here instead of the output stream.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Require the local collide condition at both ends of the start and
        /// goal attachments.
        #[arg(long)]
        strict_tangency: bool,
    },
    /// Run the benchmark protocol over one or more maps.
    Bench {
        #[arg(long, num_args = 1.., required = true)]
        maps: Vec<PathBuf>,
        #[arg(long)]
        pairs: usize,
        #[arg(long)]
        seed: u64,
        /// Comma-separated K values.
        #[arg(short = 'k', value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        json: PathBuf,
    },
    /// Re-check every invariant of a stored graph against its map.
    Verify {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Clone, Copy)]
struct Cell(GridCoord);

impl FromStr for Cell {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| format!("expected X,Y, got `{s}`"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<i32>()
                .map_err(|e| format!("bad coordinate `{v}`: {e}"))
        };
        Ok(Cell(GridCoord::new(parse(x)?, parse(y)?)))
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn internal<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Internal(format!("{context}: {e}"))
}

/// Path list and telemetry written by `find-paths`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindPathsOutput {
    pub paths: Vec<JsonPath>,
    pub telemetry: Telemetry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonPath {
    pub length: f64,
    pub waypoints: Vec<[i32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Telemetry {
    pub elapsed_ms: f64,
    pub iterations: usize,
    pub peak_queue: usize,
    pub truncated: bool,
}

impl From<&SearchResult> for FindPathsOutput {
    fn from(result: &SearchResult) -> Self {
        FindPathsOutput {
            paths: result
                .paths
                .iter()
                .map(|p| JsonPath {
                    length: p.length,
                    waypoints: p.waypoints.iter().map(|g| [g.x, g.y]).collect(),
                })
                .collect(),
            telemetry: Telemetry {
                elapsed_ms: result.elapsed.as_secs_f64() * 1e3,
                iterations: result.iterations,
                peak_queue: result.peak_primary(),
                truncated: result.truncated(),
            },
        }
    }
}

/// Runs one command line (`args[0]` is the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                1
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn read_map(path: &Path) -> Result<GridMap, Failure> {
    let text = std::fs::read_to_string(path).map_err(input(path.display()))?;
    parse_movingai_map(&text).map_err(input(path.display()))
}

fn read_graph(path: &Path) -> Result<TangentGraph, Failure> {
    let bytes = std::fs::read(path).map_err(input(path.display()))?;
    deserialize_graph(&bytes).map_err(input(path.display()))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::BuildGraph { map, out: target } => {
            let grid = read_map(&map)?;
            let started = Instant::now();
            let graph = build_tangent_graph(&grid);
            let elapsed = started.elapsed();
            let bytes = serialize_graph(&graph);
            std::fs::write(&target, &bytes).map_err(input(target.display()))?;
            writeln!(
                out,
                "nodes {} edges {} build_ms {:.1} bytes {}",
                graph.node_count(),
                graph.edge_count(),
                elapsed.as_secs_f64() * 1e3,
                bytes.len()
            )
            .map_err(internal("output"))?;
        }
        Command::FindPaths {
            map,
            graph,
            start,
            goal,
            k,
            svg,
            json,
            strict_tangency,
        } => {
            let grid = read_map(&map)?;
            let tangent = read_graph(&graph)?;
            let config = SearchConfig {
                strict_tangency,
                ..SearchConfig::new(k as usize)
            };
            let result = search_k_paths(&grid, &tangent, start.0, goal.0, &config)
                .map_err(input("find-paths"))?;
            let text = serde_json::to_string_pretty(&FindPathsOutput::from(&result))
                .map_err(internal("json"))?;
            match json {
                Some(path) => std::fs::write(&path, text + "\n").map_err(input(path.display()))?,
                None => writeln!(out, "{text}").map_err(internal("output"))?,
            }
            if let Some(path) = svg {
                let paths: Vec<Vec<GridCoord>> =
                    result.paths.iter().map(|p| p.waypoints.clone()).collect();
                render_svg(&grid, &paths, Some((start.0, goal.0)), &path)
                    .map_err(input(path.display()))?;
            }
            let _ = writeln!(
                err,
                "{} paths in {:.2} ms ({} iterations{})",
                result.paths.len(),
                result.elapsed.as_secs_f64() * 1e3,
                result.iterations,
                if result.truncated() {
                    ", truncated"
                } else {
                    ""
                }
            );
        }
        Command::Bench {
            maps,
            pairs,
            seed,
            k,
            csv,
            json,
        } => {
            if k.contains(&0) {
                return Err(Failure::Input("k values must be at least 1".into()));
            }
            let report = run_bench(&BenchConfig::new(maps, pairs, k, seed));
            for w in &report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let file = std::fs::File::create(&csv).map_err(input(csv.display()))?;
            write_csv(&report.records, file).map_err(internal(csv.display()))?;
            let text = serde_json::to_string_pretty(&serde_json::json!({
                "aggregates": report.aggregates,
                "builds": report.builds,
                "warnings": report.warnings,
            }))
            .map_err(internal("json"))?;
            std::fs::write(&json, text + "\n").map_err(input(json.display()))?;
            writeln!(out, "{} records", report.records.len()).map_err(internal("output"))?;
        }
        Command::Verify { map, graph } => {
            let grid = read_map(&map)?;
            let tangent = read_graph(&graph)?;
            tangent.validate(&grid).map_err(input(graph.display()))?;
            writeln!(
                out,
                "ok: {} nodes, {} edges",
                tangent.node_count(),
                tangent.edge_count()
            )
            .map_err(internal("output"))?;
        }
    }
    Ok(())
}
