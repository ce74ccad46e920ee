//! Cactus representation of all minimum cuts.
//!
//! `find_all_mincuts` bounds the minimum cut with the heuristic, shrinks the
//! graph with contractions that keep every minimum cut, computes the exact
//! value on the kernel and builds the cactus recursively.

mod balanced;
mod family;
mod graph;
mod kernel;
mod recursive;
mod reinsert;

pub use balanced::{balanced_by_weight, min_conductance_cut, most_balanced_cut, optimize_over_cuts, BalancedCut};
pub use family::cactus_from_family;
pub use graph::{CactusEdge, CactusGraph, EdgeKind};
pub use kernel::{
    heavy_edge_strict, heavy_neighborhood_strict, imbalanced_triangle, imbalanced_vertex, kernelize_allcuts,
    strict_local_pass, Kernel, StrictRule,
};
pub use recursive::{recursive_cactus, select_edge, EdgeStrategy, RecursionOptions};
pub use reinsert::{Reinsertion, ReinsertionLog};

use log::debug;

use crate::error::{Error, Result};
use crate::graph::{connected_components, StaticGraph};
use crate::heuristic::{viecut, VieCutOptions};
use crate::noi::{exact_mincut, ExactOptions};
use crate::{Weight, INFINITE_CUT};

/// Stack reserved for the recursive construction.
const RECURSION_STACK: usize = 512 << 20;

#[derive(Debug, Clone, Copy)]
pub struct AllCutsOptions {
    pub seed: u64,
    pub recursion: RecursionOptions,
    /// Shrink the graph before recursing.
    pub kernelize: bool,
}

impl Default for AllCutsOptions {
    fn default() -> Self {
        AllCutsOptions { seed: 0, recursion: RecursionOptions::default(), kernelize: true }
    }
}

/// Minimum cut value and the cactus of all minimum cuts of `g`.
///
/// A single vertex has value `INFINITE_CUT` and a one-node cactus. A
/// disconnected graph has value zero and an edgeless cactus with one node
/// per component.
pub fn find_all_mincuts(g: &StaticGraph, options: &AllCutsOptions) -> Result<(Weight, CactusGraph)> {
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .name("cactus".into())
            .stack_size(RECURSION_STACK)
            .spawn_scoped(scope, || all_mincuts(g, options))
            .map_err(|e| Error::invariant(format!("cannot start the cactus thread: {e}")))?
            .join()
            .map_err(|_| Error::invariant("cactus construction panicked"))?
    })
}

fn all_mincuts(g: &StaticGraph, options: &AllCutsOptions) -> Result<(Weight, CactusGraph)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::usage("graph has no vertices"));
    }
    if n == 1 {
        return Ok((INFINITE_CUT, CactusGraph::single(1, INFINITE_CUT)));
    }
    let (label, count) = connected_components(g);
    if count > 1 {
        let mut nodes = vec![Vec::new(); count];
        for v in 0..n {
            nodes[label[v]].push(v);
        }
        return Ok((0, CactusGraph::from_parts(nodes, Vec::new(), Vec::new(), 0, n)?));
    }

    let bound = viecut(g, &VieCutOptions { seed: options.seed, ..Default::default() }).value;
    let (graph, members, log, lambda_hat) = if options.kernelize {
        let k = kernelize_allcuts(g, bound);
        (k.graph, k.members, k.log, k.lambda_hat)
    } else {
        (g.clone(), (0..n).map(|v| vec![v]).collect(), ReinsertionLog::new(), bound)
    };
    debug!("kernel has {} of {n} vertices, bound {lambda_hat}", graph.n());
    let kernel_cut = if graph.n() >= 2 {
        exact_mincut(&graph, &ExactOptions { seed: options.seed, ..Default::default() }).value
    } else {
        INFINITE_CUT
    };
    let lambda = kernel_cut.min(lambda_hat);
    let mut cactus = if graph.n() >= 2 && kernel_cut == lambda {
        recursive_cactus(&graph, lambda, &options.recursion)?
    } else {
        CactusGraph::single(graph.n(), lambda)
    };
    cactus.relabel(n, |i| members[i].clone());
    if !log.replay(&mut cactus, lambda)? {
        return Err(Error::invariant("kernel reinsertion found non-adjacent anchors"));
    }
    cactus.set_lambda(lambda);
    cactus.normalize();
    Ok((lambda, cactus))
}
