//! Selecting one minimum cut from a cactus by a balance objective.

use crate::cactus::graph::{CactusGraph, Parent};
use crate::Weight;

/// A minimum cut chosen from a cactus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedCut {
    /// Canonical side: vertex 0 is outside.
    pub side: Vec<bool>,
    /// Weight of the lighter side under the vertex weights used.
    pub smaller: Weight,
    pub lambda: Weight,
}

/// Largest total weight for which disconnected inputs are balanced by an
/// exact subset sum over components.
const SUBSET_SUM_LIMIT: Weight = 1 << 22;

/// Minimum cut maximizing the number of vertices on its smaller side.
pub fn most_balanced_cut(cactus: &CactusGraph) -> Option<BalancedCut> {
    let weights = vec![1; cactus.vertex_count()];
    balanced_by_weight(cactus, &weights)
}

/// Minimum cut of smallest conductance `λ / min(vol(S), vol(V∖S))`, where
/// `degrees` are the weighted degrees of the graph.
pub fn min_conductance_cut(cactus: &CactusGraph, degrees: &[Weight]) -> Option<BalancedCut> {
    balanced_by_weight(cactus, degrees)
}

/// Represented cut maximizing `objective` over canonical sides, with its
/// score. Enumerates every cut, so the cost grows with the square of the
/// longest cycle; prefer `balanced_by_weight` for balance objectives.
pub fn optimize_over_cuts<F>(cactus: &CactusGraph, objective: F) -> Option<(Vec<bool>, f64)>
where
    F: Fn(&[bool]) -> f64,
{
    let mut best: Option<(Vec<bool>, f64)> = None;
    for side in cactus.enumerate_cuts() {
        let score = objective(&side);
        if best.as_ref().is_none_or(|(_, b)| score > *b) {
            best = Some((side, score));
        }
    }
    best
}

/// Minimum cut maximizing the smaller side weight under `weights`. Tree
/// edges are checked directly and each cycle is swept with two pointers,
/// so the cost is linear in the cactus size.
pub fn balanced_by_weight(cactus: &CactusGraph, weights: &[Weight]) -> Option<BalancedCut> {
    let n = cactus.vertex_count();
    if cactus.nodes().len() < 2 {
        return None;
    }
    let node_weight: Vec<Weight> = cactus.nodes().iter().map(|c| c.iter().map(|&v| weights[v]).sum()).collect();
    let total: Weight = node_weight.iter().sum();
    if cactus.tree_edges().is_empty() && cactus.cycles().is_empty() {
        return components_split(cactus, &node_weight, total);
    }
    let rooted = cactus.rooted();
    let mut below = node_weight.clone();
    for &x in rooted.preorder.iter().rev() {
        for &c in &rooted.children[x] {
            below[x] += below[c];
        }
    }
    let score = |s: Weight| s.min(total - s);
    // Best choice so far: the nodes whose subtrees form the side.
    let mut best: Option<(Weight, Vec<usize>)> = None;
    let mut offer = |s: Weight, nodes: &dyn Fn() -> Vec<usize>| {
        if best.as_ref().is_none_or(|(b, _)| score(s) > *b) {
            best = Some((score(s), nodes()));
        }
    };
    for &(a, b) in cactus.tree_edges() {
        let child = if rooted.parent[b] == Parent::Tree(a) { b } else { a };
        offer(below[child], &|| vec![child]);
    }
    for order in &rooted.cycle_order {
        let blocks: Vec<Weight> = order[1..].iter().map(|&x| below[x]).collect();
        let r = blocks.len();
        let mut j = 0;
        let mut sum: Weight = 0;
        for i in 0..r {
            if j < i {
                j = i;
                sum = 0;
            }
            // Grow [i, j) while it stays at most half the total.
            while j < r && 2 * (sum + blocks[j]) <= total {
                sum += blocks[j];
                j += 1;
            }
            if j > i {
                offer(sum, &|| order[1 + i..1 + j].to_vec());
            }
            if j < r {
                offer(sum + blocks[j], &|| order[1 + i..2 + j].to_vec());
            }
            if j > i {
                sum -= blocks[i];
            }
        }
    }
    let (smaller, roots) = best?;
    let mut side = vec![false; n];
    let mut stack = roots;
    while let Some(x) = stack.pop() {
        for &v in cactus.node(x) {
            side[v] = true;
        }
        stack.extend_from_slice(&rooted.children[x]);
    }
    Some(finish(side, smaller, cactus.lambda()))
}

fn finish(side: Vec<bool>, smaller: Weight, lambda: Weight) -> BalancedCut {
    BalancedCut { side: crate::oracle::canonical(&side), smaller, lambda }
}

/// Edgeless cactus of a disconnected graph: every union of components is a
/// minimum cut of weight zero. Exact subset sum when the total is small,
/// otherwise greedy largest-first filling of the lighter side.
fn components_split(cactus: &CactusGraph, node_weight: &[Weight], total: Weight) -> Option<BalancedCut> {
    let k = node_weight.len();
    let mut chosen = vec![false; k];
    if total <= SUBSET_SUM_LIMIT {
        let half = (total / 2) as usize;
        // reach[s] = component that first made sum s reachable.
        let mut reach = vec![usize::MAX; half + 1];
        reach[0] = k;
        for (i, &w) in node_weight.iter().enumerate() {
            let w = w as usize;
            for s in (w..=half).rev() {
                if w > 0 && reach[s] == usize::MAX && reach[s - w] != usize::MAX {
                    reach[s] = i;
                }
            }
        }
        let mut s = (0..=half).rev().find(|&s| reach[s] != usize::MAX).unwrap_or(0);
        while s > 0 {
            let i = reach[s];
            chosen[i] = true;
            s -= node_weight[i] as usize;
        }
    } else {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(node_weight[i]));
        let (mut a, mut b) = (0, 0);
        for i in order {
            if a <= b {
                a += node_weight[i];
                chosen[i] = true;
            } else {
                b += node_weight[i];
            }
        }
    }
    if chosen.iter().all(|&c| c) || !chosen.iter().any(|&c| c) {
        // Degenerate weights; any single component is still a cut.
        chosen = vec![false; k];
        chosen[0] = true;
    }
    let mut side = vec![false; cactus.vertex_count()];
    let mut weight = 0;
    for (i, _) in chosen.iter().enumerate().filter(|(_, &c)| c) {
        weight += node_weight[i];
        for &v in cactus.node(i) {
            side[v] = true;
        }
    }
    Some(finish(side, weight.min(total - weight), cactus.lambda()))
}
