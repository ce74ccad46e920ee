//! Shared fixtures for the benchmark suites.

use mincut_core::generators::gen_clustered_er;
use mincut_core::StaticGraph;

/// Clustered instance used across the suites.
pub fn clustered(n: usize, clusters: usize, seed: u64) -> StaticGraph {
    gen_clustered_er(n, 10, clusters, seed).expect("benchmark parameters are valid")
}

/// Unit-weight cycle.
pub fn cycle(n: usize) -> StaticGraph {
    StaticGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1))).expect("cycle is valid")
}
