//! Inexact minimum cuts by repeated cluster contraction.
//!
//! Each round clusters the graph by label propagation, contracts the
//! clusters, applies the exact local reductions and contracts again. Every
//! contraction keeps at least the cuts that survive it, so the reported
//! value is always an upper bound on the minimum cut with a witness side.

mod clustering;
mod reductions;
mod sampling;

pub use clustering::{fix_misplaced, label_propagation, label_propagation_with, Clustering, LpOptions};
pub use reductions::{dominant_edge, heavy_edge, heavy_neighborhood, heavy_triangle, pr_pass_12, pr_pass_34};
pub use sampling::{random_contract, random_contract_map, WeightedEdgeSampler};

use log::debug;

use crate::graph::{bulk_contract, connected_components, contract_by_labels, min_weighted_degree, StaticGraph};
use crate::noi::{exact_mincut, ExactOptions};
use crate::union_find::UnionFind;
use crate::{Weight, INFINITE_CUT};

/// Cut found by the heuristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicResult {
    pub value: Weight,
    /// Membership of every input vertex in one side of the cut.
    pub side: Vec<bool>,
}

#[derive(Debug, Clone, Copy)]
pub struct VieCutOptions {
    /// Graphs with at most this many vertices go to the exact solver.
    pub n0: usize,
    pub seed: u64,
    pub lp: LpOptions,
    /// Replace label propagation by random edge contraction down to this
    /// fraction of the vertices.
    pub alpha: Option<f64>,
}

impl Default for VieCutOptions {
    fn default() -> Self {
        VieCutOptions { n0: 10_000, seed: 0, lp: LpOptions::default(), alpha: None }
    }
}

struct Tracker {
    /// Current vertex of every input vertex.
    map: Vec<usize>,
    value: Weight,
    side: Vec<bool>,
}

impl Tracker {
    fn compose(&mut self, block: &[usize]) {
        for c in self.map.iter_mut() {
            *c = block[*c];
        }
    }

    fn offer_min_degree(&mut self, g: &StaticGraph) {
        if let Ok((v, d)) = min_weighted_degree(g) {
            if d < self.value && g.n() > 1 {
                self.value = d;
                self.side = self.map.iter().map(|&c| c == v).collect();
            }
        }
    }
}

/// Upper bound on the minimum cut together with a side achieving it.
///
/// Disconnected graphs give 0 with the component of vertex 0 as side.
/// Graphs with fewer than two vertices give [`INFINITE_CUT`].
pub fn viecut(g: &StaticGraph, options: &VieCutOptions) -> HeuristicResult {
    let n = g.n();
    if n <= 1 {
        return HeuristicResult { value: INFINITE_CUT, side: vec![false; n] };
    }
    let (component, count) = connected_components(g);
    if count > 1 {
        return HeuristicResult {
            value: 0,
            side: component.iter().map(|&c| c == component[0]).collect(),
        };
    }
    let mut t = Tracker { map: (0..n).collect(), value: INFINITE_CUT, side: vec![false; n] };
    t.offer_min_degree(g);
    let mut current = g.clone();
    let mut round = 0u64;
    while current.n() > options.n0.max(2) {
        let before = current.n();
        let seed = options.seed.wrapping_add(round.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        round += 1;

        let (labels, k) = match options.alpha {
            Some(alpha) => {
                let (_, block) = random_contract_map(&current, alpha, seed);
                let k = block.iter().max().map_or(0, |&b| b + 1);
                (block, k)
            }
            None => {
                let c = label_propagation_with(&current, &options.lp, seed);
                let c = fix_misplaced(&current, &c);
                (c.label, c.cluster_count)
            }
        };
        if k > 1 && k < current.n() {
            current = contract_by_labels(&current, &labels, k);
            t.compose(&labels);
            t.offer_min_degree(&current);
        }

        let mut uf = UnionFind::new(current.n());
        pr_pass_12(&current, t.value, &mut uf);
        pr_pass_34(&current, t.value, &mut uf);
        if uf.blocks() < current.n() {
            let (next, block) = bulk_contract(&current, &mut uf);
            current = next;
            t.compose(&block);
            t.offer_min_degree(&current);
        }
        debug!("viecut round {round}: {before} -> {} vertices, bound {}", current.n(), t.value);
        if current.n() == before {
            break;
        }
    }
    if current.n() >= 2 {
        let exact = exact_mincut(
            &current,
            &ExactOptions { use_viecut_bound: false, seed: options.seed, ..ExactOptions::default() },
        );
        if exact.value < t.value {
            t.value = exact.value;
            t.side = t.map.iter().map(|&c| exact.side[c]).collect();
        }
    }
    HeuristicResult { value: t.value, side: t.side }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clustered_er, random_connected};
    use crate::oracle::oracle_mincut;

    fn small_rounds(seed: u64) -> VieCutOptions {
        VieCutOptions { n0: 2, seed, ..VieCutOptions::default() }
    }

    #[test]
    fn cycle_value_two() {
        let g = StaticGraph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8, 1))).unwrap();
        let r = viecut(&g, &small_rounds(1));
        assert_eq!(r.value, 2);
        assert_eq!(g.cut_weight(&r.side), 2);
    }

    #[test]
    fn isolated_vertex_gives_zero() {
        let g = StaticGraph::from_edges(3, [(0, 1, 4)]).unwrap();
        assert_eq!(viecut(&g, &VieCutOptions::default()).value, 0);
    }

    #[test]
    fn never_below_the_minimum_cut() {
        for seed in 0..150 {
            let n = 3 + (seed as usize % 6);
            let g = random_connected(n, n, 9, seed);
            let lambda = oracle_mincut(&g).unwrap().lambda;
            for options in [small_rounds(seed), VieCutOptions { alpha: Some(0.5), ..small_rounds(seed) }] {
                let r = viecut(&g, &options);
                assert!(r.value >= lambda, "seed {seed}");
                assert_eq!(g.cut_weight(&r.side), r.value);
                assert!(r.side.iter().any(|&b| b) && r.side.iter().any(|&b| !b));
            }
        }
    }

    #[test]
    fn reductions_keep_light_cuts() {
        for seed in 0..200 {
            let n = 3 + (seed as usize % 6);
            let g = random_connected(n, n, 9, seed);
            let lambda = oracle_mincut(&g).unwrap().lambda;
            let bound = lambda + 1 + seed % 5;
            let mut uf = UnionFind::new(n);
            pr_pass_12(&g, bound, &mut uf);
            pr_pass_34(&g, bound, &mut uf);
            let (h, _) = bulk_contract(&g, &mut uf);
            assert!(h.n() >= 2, "seed {seed}");
            assert_eq!(oracle_mincut(&h).unwrap().lambda, lambda, "seed {seed}");
        }
    }

    #[test]
    fn clustered_graph_matches_exact() {
        let g = gen_clustered_er(200, 10, 2, 3).unwrap();
        let r = viecut(&g, &VieCutOptions { n0: 20, ..VieCutOptions::default() });
        let e = exact_mincut(&g, &ExactOptions { use_viecut_bound: false, ..ExactOptions::default() });
        assert_eq!(r.value, e.value);
    }
}
