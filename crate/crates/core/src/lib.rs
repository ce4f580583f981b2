//! Topologically distinct, locally shortest paths on grid maps.
//!
//! A [tangent graph](tangent) joins obstacle surface cells by segments that
//! graze obstacles. A single [priority-limited breadth-first
//! search](search) over it returns up to K paths between two cells, each
//! taut around the obstacles it passes and no two of them deformable into
//! each other.
//!
//! ```
//! use topopath::grid::{GridCoord, GridMap};
//! use topopath::search::{search_k_paths, SearchConfig};
//! use topopath::tangent::build_tangent_graph;
//!
//! let map = GridMap::from_rows(&[
//!     "........",
//!     "........",
//!     "........",
//!     "...@@...",
//!     "...@@...",
//!     "........",
//!     "........",
//!     "........",
//! ]);
//! let graph = build_tangent_graph(&map);
//! let result = search_k_paths(
//!     &map,
//!     &graph,
//!     GridCoord::new(1, 4),
//!     GridCoord::new(6, 3),
//!     &SearchConfig::new(2),
//! )
//! .unwrap();
//! assert_eq!(result.paths.len(), 2); // one on each side of the block
//! ```
//!
//! ## Examples
//!
//! One runnable program per capability:
//!
//! - **`build_graph`** - build, serialize, reload and validate a tangent graph
//! - **`find_paths`** - K distinct paths across a city map
//! - **`homotopy_oracle`** - check returned paths pairwise with the winding
//!   and crossing-sequence oracle
//! - **`queue_limitation`** - bounded versus plain breadth-first queue growth
//! - **`render_svg`** - draw a map and its paths
//! - **`bench`** - the benchmark protocol with CSV records and aggregates
//!
//! ```bash
//! cargo run --release --example find_paths -- 200
//! ```
//!
//! The `topopath` binary exposes the same operations on the command line:
//! `build-graph`, `find-paths`, `bench` and `verify` (see [`cli`]).

pub mod cli;
pub mod grid;
pub mod harness;
pub mod search;
pub mod tangent;
