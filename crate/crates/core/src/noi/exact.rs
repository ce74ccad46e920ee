//! Exact minimum cut by repeated certificate contraction.

use log::debug;

use crate::graph::{bulk_contract, connected_components, min_weighted_degree, StaticGraph};
use crate::heuristic::{viecut, VieCutOptions};
use crate::noi::capforest::{capforest, capforest_parallel, start_vertex};
use crate::noi::pq::QueueKind;
use crate::{Weight, INFINITE_CUT};

#[derive(Debug, Clone, Copy)]
pub struct ExactOptions {
    /// Tighten the initial bound with the cluster heuristic.
    pub use_viecut_bound: bool,
    /// Queue discipline. Defaults to the bucket stack for one worker and the
    /// bucket queue otherwise.
    pub queue: Option<QueueKind>,
    pub workers: usize,
    pub seed: u64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            use_viecut_bound: true,
            queue: None,
            workers: 1,
            seed: 0,
        }
    }
}

/// A cut value with one side as a vertex membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCut {
    pub value: Weight,
    pub side: Vec<bool>,
}

fn round_seed(seed: u64, round: u64) -> u64 {
    seed ^ round.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Minimum cut of `g` with a witness side.
///
/// Disconnected graphs give value 0 with the component of vertex 0 as side.
/// Graphs with fewer than two vertices have no cut and report
/// [`INFINITE_CUT`].
pub fn exact_mincut(g: &StaticGraph, options: &ExactOptions) -> MinCut {
    let n = g.n();
    if n <= 1 {
        return MinCut { value: INFINITE_CUT, side: vec![false; n] };
    }
    let (component, count) = connected_components(g);
    if count > 1 {
        return MinCut {
            value: 0,
            side: component.iter().map(|&c| c == component[0]).collect(),
        };
    }
    let workers = options.workers.max(1);
    let queue = options.queue.unwrap_or(if workers > 1 {
        QueueKind::BucketQueue
    } else {
        QueueKind::BucketStack
    });

    let (v, d) = min_weighted_degree(g).expect("graph is nonempty");
    let mut best = d;
    let mut side: Vec<bool> = (0..n).map(|x| x == v).collect();
    if options.use_viecut_bound {
        let h = viecut(g, &VieCutOptions { seed: options.seed, ..VieCutOptions::default() });
        if h.value < best {
            best = h.value;
            side = h.side;
        }
    }

    let mut current = g.clone();
    let mut map: Vec<usize> = (0..n).collect();
    let mut round = 0u64;
    while current.n() > 2 {
        let seed = round_seed(options.seed, round);
        round += 1;
        let mut run = capforest_parallel(&current, best, workers, seed, queue);
        if let (true, Some(found)) = (run.updated_lambda_hat < best, run.improved_side.as_ref()) {
            best = run.updated_lambda_hat;
            side = lift(&map, current.n(), found);
        }
        let mut attempt = 0;
        while run.marks.blocks() == current.n() {
            // The certificate guarantees a mark unless the bound dropped
            // mid-scan; retry with the lowered bound.
            let start = start_vertex(round_seed(seed, attempt + 1), 0, current.n());
            run = capforest(&current, best, queue, start, false);
            let improved = run.updated_lambda_hat < best;
            if let (true, Some(found)) = (improved, run.improved_side.as_ref()) {
                best = run.updated_lambda_hat;
                side = lift(&map, current.n(), found);
            }
            attempt += 1;
            assert!(
                run.marks.blocks() < current.n() || improved,
                "sequential certificate pass marked no edge"
            );
        }
        let (next, block) = bulk_contract(&current, &mut run.marks);
        for c in map.iter_mut() {
            *c = block[*c];
        }
        debug!("exact round {round}: {} -> {} vertices, bound {best}", current.n(), next.n());
        current = next;
        if current.n() < 2 {
            break;
        }
        let (v, d) = min_weighted_degree(&current).expect("graph is nonempty");
        if d < best {
            best = d;
            side = map.iter().map(|&c| c == v).collect();
        }
    }
    MinCut { value: best, side }
}

/// Expands a set of current vertices to original vertices.
fn lift(map: &[usize], current_n: usize, vertices: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; current_n];
    for &v in vertices {
        inside[v] = true;
    }
    map.iter().map(|&c| inside[c]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, Weight)]) -> StaticGraph {
        StaticGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn dumbbell() -> StaticGraph {
        let mut edges = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j, 2));
                }
            }
        }
        edges.push((3, 4, 1));
        graph(8, &edges)
    }

    #[test]
    fn cycle_has_cut_two() {
        let g = graph(6, &(0..6).map(|i| (i, (i + 1) % 6, 1)).collect::<Vec<_>>());
        let cut = exact_mincut(&g, &ExactOptions::default());
        assert_eq!(cut.value, 2);
        assert_eq!(g.cut_weight(&cut.side), 2);
    }

    #[test]
    fn dumbbell_side_is_a_clique() {
        let g = dumbbell();
        for use_viecut_bound in [false, true] {
            let cut = exact_mincut(&g, &ExactOptions { use_viecut_bound, ..ExactOptions::default() });
            assert_eq!(cut.value, 1);
            let members: Vec<usize> = (0..8).filter(|&v| cut.side[v]).collect();
            assert!(members == vec![0, 1, 2, 3] || members == vec![4, 5, 6, 7]);
        }
    }

    #[test]
    fn disconnected_and_tiny_graphs() {
        let g = graph(4, &[(0, 1, 1), (2, 3, 1)]);
        let cut = exact_mincut(&g, &ExactOptions::default());
        assert_eq!(cut.value, 0);
        assert_eq!(cut.side, vec![true, true, false, false]);
        assert_eq!(exact_mincut(&StaticGraph::empty(1), &ExactOptions::default()).value, INFINITE_CUT);
    }

    #[test]
    fn cut_below_min_degree() {
        // Two heavy triangles where every vertex has degree at least 5 but
        // the pair of bridges totals 4.
        let g = graph(
            6,
            &[(0, 1, 3), (1, 2, 3), (0, 2, 3), (3, 4, 3), (4, 5, 3), (3, 5, 3), (0, 3, 2), (2, 5, 2)],
        );
        let cut = exact_mincut(&g, &ExactOptions { use_viecut_bound: false, ..ExactOptions::default() });
        assert_eq!(cut.value, 4);
        assert_eq!(g.cut_weight(&cut.side), 4);
    }

    #[test]
    fn agrees_with_oracle_for_every_queue_and_worker_count() {
        use crate::generators::random_connected;
        use crate::oracle::oracle_mincut;
        for seed in 0..120 {
            let n = 2 + (seed as usize % 8);
            let g = random_connected(n, seed as usize % 12, 10, seed);
            let lambda = oracle_mincut(&g).unwrap().lambda;
            for queue in [QueueKind::BucketStack, QueueKind::BucketQueue, QueueKind::Heap] {
                for workers in [1, 2, 4] {
                    let cut = exact_mincut(&g, &ExactOptions { queue: Some(queue), workers, seed, use_viecut_bound: seed % 2 == 0 });
                    assert_eq!(cut.value, lambda, "seed {seed} {queue:?} x{workers}");
                    assert_eq!(g.cut_weight(&cut.side), lambda);
                }
            }
        }
    }
}
