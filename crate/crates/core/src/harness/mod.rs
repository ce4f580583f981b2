//! Tooling around the planner: homotopy oracle, endpoint sampling,
//! synthetic maps, SVG rendering and the benchmark protocol.

pub mod bench;
pub mod endpoints;
pub mod homotopy;
pub mod svg;
pub mod synth;
