use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{locally_collide_check_with, Tangency, TangentGraph};
use crate::grid::{surface_grids, GridMap, SightIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildStats {
    pub candidates: usize,
    pub visible_pairs: usize,
    pub nodes: usize,
    pub edges: usize,
    pub elapsed: Duration,
}

/// Builds the tangent graph with edges tangent at both ends.
pub fn build_tangent_graph(map: &GridMap) -> TangentGraph {
    build_tangent_graph_with(map, Tangency::BothEnds).0
}

pub fn build_tangent_graph_with(map: &GridMap, mode: Tangency) -> (TangentGraph, BuildStats) {
    let started = Instant::now();
    let candidates = surface_grids(map);
    let n = candidates.len();
    let sight = SightIndex::new(map);

    let per_node: Vec<(usize, Vec<u32>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = candidates[i];
            let mut visible = 0;
            let edges = (i + 1..n)
                .filter(|&j| {
                    let b = candidates[j];
                    if !sight.line_of_sight(a, b) {
                        return false;
                    }
                    visible += 1;
                    locally_collide_check_with(map, a, b, mode)
                })
                .map(|j| j as u32)
                .collect();
            (visible, edges)
        })
        .collect();
    let visible_pairs = per_node.iter().map(|(v, _)| v).sum();
    let edges: Vec<Vec<u32>> = per_node.into_iter().map(|(_, e)| e).collect();

    let mut degree = vec![0usize; n];
    for (i, list) in edges.iter().enumerate() {
        degree[i] += list.len();
        for &j in list {
            degree[j as usize] += 1;
        }
    }
    let mut remap = vec![u32::MAX; n];
    let mut nodes = Vec::new();
    for i in 0..n {
        if degree[i] > 0 {
            remap[i] = nodes.len() as u32;
            nodes.push(candidates[i]);
        }
    }
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (i, list) in edges.iter().enumerate() {
        for &j in list {
            let (a, b) = (remap[i], remap[j as usize]);
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
    }
    let graph = TangentGraph::from_parts(map.width(), map.height(), nodes, adjacency);
    let stats = BuildStats {
        candidates: n,
        visible_pairs,
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        elapsed: started.elapsed(),
    };
    (graph, stats)
}
