use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::StaticGraph;
use crate::Weight;

/// Component label per vertex and the number of components.
pub fn connected_components(g: &StaticGraph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for root in 0..n {
        if label[root] != usize::MAX {
            continue;
        }
        label[root] = count;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for (t, _) in g.neighbors(v) {
                if label[t] == usize::MAX {
                    label[t] = count;
                    queue.push_back(t);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

pub fn is_connected(g: &StaticGraph) -> bool {
    g.n() <= 1 || connected_components(g).1 == 1
}

/// Vertex of smallest weighted degree. Ties go to the lowest id.
pub fn min_weighted_degree(g: &StaticGraph) -> Result<(usize, Weight)> {
    (0..g.n())
        .map(|v| (v, g.weighted_degree(v)))
        .min_by_key(|&(v, d)| (d, v))
        .ok_or_else(|| Error::usage("minimum degree of an empty graph"))
}

/// Vertices of the k-core restricted to its largest connected component,
/// in increasing id order. Degrees are weighted, which coincides with plain
/// degrees on unit-weight graphs.
pub fn kcore_vertices(g: &StaticGraph, k: Weight) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<Weight> = (0..n).map(|v| g.weighted_degree(v)).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] < k).collect();
    for &v in &stack {
        removed[v] = true;
    }
    while let Some(v) = stack.pop() {
        for (t, w) in g.neighbors(v) {
            if removed[t] {
                continue;
            }
            degree[t] -= w;
            if degree[t] < k {
                removed[t] = true;
                stack.push(t);
            }
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    if core.is_empty() {
        return core;
    }
    let sub = g.induced(&core);
    let (label, count) = connected_components(&sub);
    let mut size = vec![0usize; count];
    for &l in &label {
        size[l] += 1;
    }
    let best = (0..count).max_by_key(|&c| (size[c], std::cmp::Reverse(c))).unwrap_or(0);
    core.iter()
        .zip(&label)
        .filter(|&(_, &l)| l == best)
        .map(|(&v, _)| v)
        .collect()
}

/// The largest connected component of the k-core, renumbered.
pub fn kcore(g: &StaticGraph, k: Weight) -> StaticGraph {
    g.induced(&kcore_vertices(g, k))
}
