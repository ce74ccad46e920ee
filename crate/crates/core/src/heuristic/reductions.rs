//! Local contraction rules that preserve every cut lighter than a bound.
//!
//! Conditions 1 and 4 certify `λ(v, w) ≥ λ̂` and can be applied freely.
//! Conditions 2 and 3 only show that some light cut does not separate the
//! endpoints. They are applied when both endpoints are still singleton
//! blocks and have weighted degree at least `λ̂`, so the contracted pairs
//! form a matching and no singleton cut below the bound exists.

use crate::graph::StaticGraph;
use crate::union_find::UnionFind;
use crate::Weight;

/// The edge alone reaches the bound.
pub fn heavy_edge(weight: Weight, lambda_hat: Weight) -> bool {
    weight >= lambda_hat
}

/// The edge carries at least half the weighted degree of an endpoint.
pub fn dominant_edge(degree_v: Weight, degree_w: Weight, weight: Weight) -> bool {
    degree_v <= 2 * weight || degree_w <= 2 * weight
}

/// Triangle `v, w, u` where both `v` and `w` send at least half their
/// weight into the triangle.
pub fn heavy_triangle(degree_v: Weight, degree_w: Weight, vw: Weight, vu: Weight, wu: Weight) -> bool {
    degree_v <= 2 * (vw + vu) && degree_w <= 2 * (vw + wu)
}

/// The edge plus the disjoint two-paths through common neighbours reach the
/// bound.
pub fn heavy_neighborhood(weight: Weight, shared: Weight, lambda_hat: Weight) -> bool {
    weight + shared >= lambda_hat
}

fn matchable(g: &StaticGraph, uf: &mut UnionFind, v: usize, w: usize, lambda_hat: Weight) -> bool {
    uf.block_size(v) == 1
        && uf.block_size(w) == 1
        && g.weighted_degree(v) >= lambda_hat
        && g.weighted_degree(w) >= lambda_hat
}

/// Applies conditions 1 and 2 in one scan over the edges. Edges that are
/// the only edge of an endpoint are skipped. Returns the number of unions.
pub fn pr_pass_12(g: &StaticGraph, lambda_hat: Weight, uf: &mut UnionFind) -> usize {
    let mut marked = 0;
    for (v, w, c) in g.edges() {
        if g.degree(v) == 1 || g.degree(w) == 1 || uf.same(v, w) {
            continue;
        }
        let hit = heavy_edge(c, lambda_hat)
            || (dominant_edge(g.weighted_degree(v), g.weighted_degree(w), c) && matchable(g, uf, v, w, lambda_hat));
        if hit && uf.union(v, w) {
            marked += 1;
        }
    }
    marked
}

/// Applies conditions 3 and 4. Each vertex is scanned once and every
/// neighbourhood is walked at most twice. Returns the number of unions.
pub fn pr_pass_34(g: &StaticGraph, lambda_hat: Weight, uf: &mut UnionFind) -> usize {
    let n = g.n();
    let mut scanned = vec![false; n];
    let mut to_v = vec![0 as Weight; n];
    let mut marked = 0;
    for v in 0..n {
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
            if g.degree(v) == 1 || g.degree(w) == 1 || uf.same(v, w) {
                continue;
            }
            let mut shared = 0;
            let mut triangle = false;
            for (u, wu) in g.neighbors(w) {
                let vu = to_v[u];
                if u == v || vu == 0 {
                    continue;
                }
                shared += vu.min(wu);
                triangle |= heavy_triangle(g.weighted_degree(v), g.weighted_degree(w), c, vu, wu);
            }
            let hit = heavy_neighborhood(c, shared, lambda_hat) || (triangle && matchable(g, uf, v, w, lambda_hat));
            if hit && uf.union(v, w) {
                marked += 1;
            }
        }
        for (u, _) in g.neighbors(v) {
            to_v[u] = 0;
        }
    }
    marked
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, Weight)]) -> StaticGraph {
        StaticGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn heavy_edge_is_marked() {
        let g = graph(4, &[(0, 1, 7), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        let mut uf = UnionFind::new(4);
        assert!(pr_pass_12(&g, 5, &mut uf) >= 1);
        assert!(uf.same(0, 1));
    }

    #[test]
    fn dominant_edge_arithmetic() {
        assert!(dominant_edge(8, 100, 6));
        assert!(!dominant_edge(13, 13, 6));
        let g = graph(4, &[(0, 1, 6), (0, 2, 2), (1, 2, 3), (1, 3, 4), (2, 3, 4)]);
        let mut uf = UnionFind::new(4);
        pr_pass_12(&g, 8, &mut uf);
        assert!(uf.same(0, 1));
    }

    #[test]
    fn unit_cycle_has_no_heavy_edge() {
        let edges: Vec<_> = (0..4).map(|i| (i, (i + 1) % 4, 1)).collect();
        let g = graph(4, &edges);
        for (_, _, w) in g.edges() {
            assert!(!heavy_edge(w, 2));
        }
    }

    #[test]
    fn triangle_neighborhood_reaches_bound() {
        let g = graph(3, &[(0, 1, 10), (1, 2, 10), (0, 2, 10)]);
        assert!(heavy_neighborhood(10, 10, 12));
        let mut uf = UnionFind::new(3);
        assert!(pr_pass_34(&g, 12, &mut uf) >= 1);
    }

    #[test]
    fn star_has_no_shared_neighborhoods() {
        let g = graph(5, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]);
        let mut uf = UnionFind::new(5);
        assert_eq!(pr_pass_34(&g, 1, &mut uf), 0);
    }

    #[test]
    fn heavy_triangle_is_marked() {
        // v = 0 and w = 1 send most of their weight into the triangle with
        // u = 2; each also has one light edge to the far vertices.
        let g = graph(5, &[(0, 1, 2), (0, 2, 3), (1, 2, 3), (0, 3, 4), (1, 4, 4), (3, 4, 1), (2, 3, 1)]);
        assert!(heavy_triangle(9, 9, 2, 3, 3));
        assert!(!dominant_edge(9, 9, 2));
        let mut uf = UnionFind::new(5);
        pr_pass_34(&g, 5, &mut uf);
        assert!(uf.same(0, 1));
    }
}
