//! Label propagation clustering and the misplaced-vertex correction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::StaticGraph;
use crate::Weight;

/// Partition of the vertices into labelled clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    /// Cluster of every vertex, in `0..cluster_count`.
    pub label: Vec<usize>,
    pub cluster_count: usize,
}

impl Clustering {
    /// Every vertex in its own cluster.
    pub fn singletons(n: usize) -> Self {
        Clustering { label: (0..n).collect(), cluster_count: n }
    }

    /// Compacts arbitrary labels to `0..k` in order of first appearance.
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let label = raw
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Clustering { label, cluster_count: map.len() }
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cluster_count];
        for &l in &self.label {
            sizes[l] += 1;
        }
        sizes
    }
}

/// Tuning knobs of label propagation.
#[derive(Debug, Clone, Copy)]
pub struct LpOptions {
    pub iterations: usize,
    /// Vertex ids are visited in shuffled blocks of this many consecutive ids.
    pub block_size: usize,
    /// In the first round a vertex may not leave its label once another
    /// vertex has joined it.
    pub lock_first_round: bool,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { iterations: 2, block_size: 128, lock_first_round: false }
    }
}

/// Label propagation with the default block size.
pub fn label_propagation(g: &StaticGraph, iterations: usize, seed: u64) -> Clustering {
    label_propagation_with(g, &LpOptions { iterations, ..LpOptions::default() }, seed)
}

/// Every vertex repeatedly adopts the label with the heaviest connection,
/// breaking ties uniformly at random among all maximal labels including its
/// own.
pub fn label_propagation_with(g: &StaticGraph, options: &LpOptions, seed: u64) -> Clustering {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<usize> = (0..n).collect();
    let mut gain = vec![0 as Weight; n];
    let mut seen: Vec<usize> = Vec::new();
    let mut joined = vec![false; n];
    let block = options.block_size.max(1);
    let mut blocks: Vec<usize> = (0..n).step_by(block).collect();

    for round in 0..options.iterations {
        blocks.shuffle(&mut rng);
        let lock = round == 0 && options.lock_first_round;
        for &first in &blocks {
            for v in first..(first + block).min(n) {
                if lock && joined[label[v]] {
                    continue;
                }
                for (u, w) in g.neighbors(v) {
                    let l = label[u];
                    if gain[l] == 0 {
                        seen.push(l);
                    }
                    gain[l] += w;
                }
                if seen.is_empty() {
                    continue;
                }
                let own = label[v];
                let best_gain = seen.iter().map(|&l| gain[l]).max().unwrap_or(0);
                let mut choice = own;
                let mut ties = 0u32;
                if gain[own] == best_gain {
                    ties = 1;
                }
                for &l in &seen {
                    if l != own && gain[l] == best_gain {
                        ties += 1;
                        if rng.gen_range(0..ties) == 0 {
                            choice = l;
                        }
                    }
                }
                for &l in &seen {
                    gain[l] = 0;
                }
                seen.clear();
                if choice != own {
                    label[v] = choice;
                    joined[choice] = true;
                }
            }
        }
    }
    Clustering::from_labels(&label)
}

/// Weight leaving each cluster, the degree of its contracted vertex.
fn cluster_degrees(g: &StaticGraph, c: &Clustering) -> Vec<Weight> {
    let mut out = vec![0 as Weight; c.cluster_count];
    for (u, v, w) in g.edges() {
        if c.label[u] != c.label[v] {
            out[c.label[u]] += w;
            out[c.label[v]] += w;
        }
    }
    out
}

/// Smallest value, its multiplicity and the smallest value over the rest.
fn two_smallest(values: &[Weight]) -> (Weight, usize, Weight) {
    let mut first = Weight::MAX;
    let mut count = 0;
    let mut second = Weight::MAX;
    for &x in values {
        if x < first {
            second = first;
            first = x;
            count = 1;
        } else if x == first {
            count += 1;
            second = first;
        } else if x < second {
            second = x;
        }
    }
    (first, count, second)
}

/// Splits vertices out of small clusters when the split raises the minimum
/// degree of the contracted graph.
///
/// Only clusters with at most `log2 n` members are examined, and only moves
/// of a single vertex into a new singleton cluster are tried.
pub fn fix_misplaced(g: &StaticGraph, c: &Clustering) -> Clustering {
    let n = g.n();
    if c.cluster_count < 2 || n < 4 {
        return c.clone();
    }
    let limit = (usize::BITS - 1 - n.leading_zeros()) as usize;
    let mut label = c.label.clone();
    let mut count = c.cluster_count;
    let mut degrees = cluster_degrees(g, c);
    let mut sizes = c.sizes();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..n {
        members[label[v]].push(v);
    }

    for cluster in 0..c.cluster_count {
        if sizes[cluster] < 2 || sizes[cluster] > limit {
            continue;
        }
        for &v in &members[cluster].clone() {
            if sizes[cluster] < 2 {
                break;
            }
            let (lowest, ties, rest) = two_smallest(&degrees);
            if degrees[cluster] != lowest || ties > 1 {
                break;
            }
            let inside: Weight = g.neighbors(v).filter(|&(u, _)| label[u] == cluster).map(|(_, w)| w).sum();
            let outside = g.weighted_degree(v) - inside;
            let remaining = degrees[cluster] - outside + inside;
            let new_min = rest.min(remaining).min(g.weighted_degree(v));
            if new_min > lowest {
                label[v] = count;
                degrees[cluster] = remaining;
                degrees.push(g.weighted_degree(v));
                sizes[cluster] -= 1;
                sizes.push(1);
                count += 1;
            }
        }
    }
    Clustering { label, cluster_count: count }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, Weight)]) -> StaticGraph {
        StaticGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    pub(crate) fn two_k5() -> StaticGraph {
        let mut edges = Vec::new();
        for base in [0, 5] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((base + i, base + j, 1));
                }
            }
        }
        edges.push((4, 9, 1));
        graph(10, &edges)
    }

    #[test]
    fn two_cliques_become_two_clusters() {
        let g = two_k5();
        for seed in 0..20 {
            let c = label_propagation(&g, 2, seed);
            assert_eq!(c.cluster_count, 2, "seed {seed}");
            assert!((0..5).all(|v| c.label[v] == c.label[0]));
            assert!((5..10).all(|v| c.label[v] == c.label[5]));
        }
    }

    #[test]
    fn edgeless_graph_keeps_singletons() {
        let c = label_propagation(&StaticGraph::empty(7), 2, 3);
        assert_eq!(c, Clustering::singletons(7));
    }

    #[test]
    fn k4_converges_to_one_cluster() {
        let g = graph(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]);
        for seed in 0..20 {
            assert_eq!(label_propagation(&g, 2, seed).cluster_count, 1, "seed {seed}");
        }
    }

    #[test]
    fn locked_first_round_at_least_halves() {
        let g = graph(8, &(0..8).map(|i| (i, (i + 1) % 8, 1 + i as Weight % 3)).collect::<Vec<_>>());
        let opts = LpOptions { iterations: 1, lock_first_round: true, ..LpOptions::default() };
        for seed in 0..10 {
            assert!(label_propagation_with(&g, &opts, seed).cluster_count <= 4);
        }
    }

    #[test]
    fn misplaced_vertex_becomes_singleton() {
        // Cluster {c, a} with c = 0 hanging on the heavy edge to a, a light
        // edge from c into cluster {b1, b2} and a second cluster {x1, x2}.
        let (c, a, b1, b2, x1, x2) = (0, 1, 2, 3, 4, 5);
        let g = graph(6, &[(a, c, 10), (c, b1, 3), (b1, b2, 20), (x1, x2, 20), (b2, x1, 6), (x2, a, 5)]);
        let clustering = Clustering { label: vec![0, 0, 1, 1, 2, 2], cluster_count: 3 };
        let fixed = fix_misplaced(&g, &clustering);
        assert!((1..6).all(|v| fixed.label[v] != fixed.label[c]));
        assert!(fixed.cluster_count > 3);
    }

    #[test]
    fn large_clusters_are_left_alone() {
        let g = two_k5();
        let clustering = Clustering { label: vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1], cluster_count: 2 };
        assert_eq!(fix_misplaced(&g, &clustering), clustering);
    }

    #[test]
    fn optimal_clustering_is_unchanged() {
        let g = graph(6, &[(0, 1, 9), (1, 2, 9), (0, 2, 9), (3, 4, 9), (4, 5, 9), (3, 5, 9), (2, 3, 1)]);
        let clustering = Clustering { label: vec![0, 0, 0, 1, 1, 1], cluster_count: 2 };
        assert_eq!(fix_misplaced(&g, &clustering), clustering);
    }
}
