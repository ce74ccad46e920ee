//! Contractions that keep every minimum cut, applied before the recursive
//! construction.

use log::debug;

use crate::cactus::reinsert::{Reinsertion, ReinsertionLog};
use crate::graph::{min_weighted_degree, MutableGraph, StaticGraph};
use crate::noi::{capforest, QueueKind};
use crate::union_find::UnionFind;
use crate::Weight;

/// Local contraction rule that certifies an edge crosses no minimum cut
/// when the minimum cut is at most `λ̂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrictRule {
    /// `c(e) > λ̂`.
    HeavyEdge,
    /// `c(v) < 2 c(e)` and `c(v) > λ̂` for an endpoint `v`.
    ImbalancedVertex,
    /// A triangle `v, w, u` where both `v` and `w` send more than half
    /// their weight into it and both have weighted degree above `λ̂`.
    ImbalancedTriangle,
    /// `c(e)` plus the two-paths through common neighbours exceeds `λ̂`.
    HeavyNeighborhood,
}

pub fn heavy_edge_strict(weight: Weight, lambda_hat: Weight) -> bool {
    weight > lambda_hat
}

pub fn imbalanced_vertex(degree: Weight, weight: Weight, lambda_hat: Weight) -> bool {
    degree < 2 * weight && degree > lambda_hat
}

pub fn imbalanced_triangle(
    degree_v: Weight,
    degree_w: Weight,
    vw: Weight,
    vu: Weight,
    wu: Weight,
    lambda_hat: Weight,
) -> bool {
    degree_v < 2 * (vw + vu) && degree_w < 2 * (vw + wu) && degree_v > lambda_hat && degree_w > lambda_hat
}

pub fn heavy_neighborhood_strict(weight: Weight, shared: Weight, lambda_hat: Weight) -> bool {
    weight + shared > lambda_hat
}

/// Applies the strict local rules to every edge of `g`, uniting the
/// endpoints in `uf`. Every neighbourhood is walked at most twice. Returns
/// the number of unions.
pub fn strict_local_pass(g: &StaticGraph, lambda_hat: Weight, uf: &mut UnionFind) -> usize {
    let n = g.n();
    let mut scanned = vec![false; n];
    let mut to_v = vec![0 as Weight; n];
    let mut marked = 0;
    for v in 0..n {
        let dv = g.weighted_degree(v);
        for (w, c) in g.neighbors(v).filter(|&(w, _)| v < w) {
            let dw = g.weighted_degree(w);
            let hit = heavy_edge_strict(c, lambda_hat)
                || imbalanced_vertex(dv, c, lambda_hat)
                || imbalanced_vertex(dw, c, lambda_hat);
            if hit && uf.union(v, w) {
                marked += 1;
            }
        }
        if scanned[v] {
            continue;
        }
        scanned[v] = true;
        for (u, c) in g.neighbors(v) {
            to_v[u] = c;
        }
        for (w, c) in g.neighbors(v) {
            if scanned[w] {
                continue;
            }
            scanned[w] = true;
            if uf.same(v, w) {
                continue;
            }
            let dw = g.weighted_degree(w);
            let mut shared = 0;
            let mut triangle = false;
            for (u, wu) in g.neighbors(w) {
                let vu = to_v[u];
                if u == v || vu == 0 {
                    continue;
                }
                shared += vu.min(wu);
                triangle |= imbalanced_triangle(dv, dw, c, vu, wu, lambda_hat);
            }
            if (triangle || heavy_neighborhood_strict(c, shared, lambda_hat)) && uf.union(v, w) {
                marked += 1;
            }
        }
        for (u, _) in g.neighbors(v) {
            to_v[u] = 0;
        }
    }
    marked
}

/// Strict certificate pass plus strict local rules on `g`. The returned
/// blocks only join vertices that no cut of weight at most `λ̂` separates.
pub(crate) fn strict_marks(g: &StaticGraph, lambda_hat: Weight) -> UnionFind {
    let mut marks = if g.n() > 0 {
        capforest(g, lambda_hat, QueueKind::BucketQueue, 0, true).marks
    } else {
        UnionFind::new(0)
    };
    strict_local_pass(g, lambda_hat, &mut marks);
    marks
}

/// Graph left after kernelization.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub graph: StaticGraph,
    /// Input vertices behind each kernel vertex.
    pub members: Vec<Vec<usize>>,
    /// Degree-one removals, reinserted only when their weight is minimal.
    pub log: ReinsertionLog,
    /// Upper bound on the minimum cut, lowered by minimum degrees seen.
    pub lambda_hat: Weight,
}

/// Peels vertices of degree one into the log and contracts edges that the
/// strict rules certify, until a round shrinks the graph by less than 1%.
/// `lambda_hat` must be an upper bound on the minimum cut of `g`.
pub fn kernelize_allcuts(g: &StaticGraph, lambda_hat: Weight) -> Kernel {
    let mut lambda_hat = lambda_hat;
    if let Ok((_, d)) = min_weighted_degree(g) {
        lambda_hat = lambda_hat.min(d);
    }
    let mut work = MutableGraph::from_static(g);
    let mut log = ReinsertionLog::new();
    loop {
        let before = work.n();
        peel_degree_one(&mut work, lambda_hat, &mut log);
        if work.n() > 2 {
            let (h, ids) = work.to_static();
            let mut marks = strict_marks(&h, lambda_hat);
            if marks.blocks() < h.n() {
                let (labels, k) = marks.block_labels();
                let mut block_of = vec![0; work.capacity()];
                for (i, &v) in ids.iter().enumerate() {
                    block_of[v] = labels[i];
                }
                work = work.quotient(&block_of, k);
            }
        }
        if work.n() >= 2 {
            let (h, _) = work.to_static();
            if let Ok((_, d)) = min_weighted_degree(&h) {
                lambda_hat = lambda_hat.min(d);
            }
        }
        let after = work.n();
        debug!("kernel round: {before} -> {after} vertices, bound {lambda_hat}");
        if after <= 1 || (before - after) * 100 < before {
            break;
        }
    }
    let (graph, ids) = work.to_static();
    let members = ids.iter().map(|&v| work.contained(v).to_vec()).collect();
    Kernel { graph, members, log, lambda_hat }
}

fn peel_degree_one(work: &mut MutableGraph, lambda_hat: Weight, log: &mut ReinsertionLog) {
    let mut stack: Vec<usize> = work.vertices().collect();
    stack.reverse();
    while let Some(v) = stack.pop() {
        if !work.is_alive(v) || work.degree(v) != 1 {
            continue;
        }
        let (u, w) = work.neighbors(v).next().expect("degree one");
        if w < lambda_hat {
            continue;
        }
        // On a lone edge only the endpoint with the smaller group is logged.
        let (v, u) = if work.degree(u) == 1 && work.contained(u).len() < work.contained(v).len() {
            (u, v)
        } else {
            (v, u)
        };
        if w == lambda_hat {
            log.push(Reinsertion::Leaf {
                members: work.contained(v).to_vec(),
                anchor: work.contained(u)[0],
                weight: w,
            });
        }
        let keep = work.merge_vertices(u, v);
        stack.push(keep);
    }
}
