//! Brute-force reference solvers used as ground truth in tests and by the
//! `oracle` subcommand.

use crate::error::{Error, Result};
use crate::graph::StaticGraph;
use crate::{Weight, INFINITE_CUT};

/// Largest vertex count accepted by the exhaustive enumerations.
pub const ORACLE_MAX_N: usize = 16;

/// Minimum cut value together with every minimum bipartition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCuts {
    pub lambda: Weight,
    /// Canonical sides: vertex 0 is never on the listed side.
    pub sides: Vec<Vec<bool>>,
}

/// Flips `side` if needed so that vertex 0 lies outside it.
pub fn canonical(side: &[bool]) -> Vec<bool> {
    if side.first().copied().unwrap_or(false) {
        side.iter().map(|&b| !b).collect()
    } else {
        side.to_vec()
    }
}

fn side_of_mask(n: usize, mask: u64) -> Vec<bool> {
    (0..n).map(|v| v > 0 && mask >> (v - 1) & 1 == 1).collect()
}

fn check_size(g: &StaticGraph) -> Result<()> {
    if g.n() > ORACLE_MAX_N {
        return Err(Error::usage(format!(
            "exhaustive oracle refuses graphs with more than {ORACLE_MAX_N} vertices"
        )));
    }
    Ok(())
}

/// Cut weight of every bipartition, indexed by the mask of vertices
/// `1..n` on the side opposite vertex 0. Index 0 (the empty side) is unused.
pub fn all_cut_weights(g: &StaticGraph) -> Result<Vec<Weight>> {
    check_size(g)?;
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let edges: Vec<(usize, usize, Weight)> = g.edges().collect();
    let count = 1usize << (n - 1);
    let mut weights = vec![0; count];
    let bit = |v: usize, mask: usize| v > 0 && mask >> (v - 1) & 1 == 1;
    for (mask, slot) in weights.iter_mut().enumerate().skip(1) {
        *slot = edges
            .iter()
            .filter(|&&(u, v, _)| bit(u, mask) != bit(v, mask))
            .map(|&(_, _, w)| w)
            .sum();
    }
    Ok(weights)
}

/// Exhaustive scan of all `2^(n-1) - 1` bipartitions.
pub fn oracle_mincut(g: &StaticGraph) -> Result<OracleCuts> {
    let weights = all_cut_weights(g)?;
    let n = g.n();
    if n <= 1 {
        return Ok(OracleCuts { lambda: INFINITE_CUT, sides: Vec::new() });
    }
    let lambda = weights[1..].iter().copied().min().unwrap_or(INFINITE_CUT);
    let sides = (1..weights.len())
        .filter(|&mask| weights[mask] == lambda)
        .map(|mask| side_of_mask(n, mask as u64))
        .collect();
    Ok(OracleCuts { lambda, sides })
}

/// Minimum weight of a cut with `s` on one side and every sink on the other.
pub fn min_st_cut(g: &StaticGraph, s: usize, sinks: &[usize]) -> Result<Weight> {
    let weights = all_cut_weights(g)?;
    let n = g.n();
    let mut best = INFINITE_CUT;
    for (mask, &w) in weights.iter().enumerate().skip(1) {
        let side = side_of_mask(n, mask as u64);
        if sinks.iter().all(|&t| side[t] != side[s]) {
            best = best.min(w);
        }
    }
    Ok(best)
}

/// Pairwise connectivity `λ(G, u, v)` for all vertex pairs.
pub fn pairwise_connectivity(g: &StaticGraph) -> Result<Vec<Vec<Weight>>> {
    let weights = all_cut_weights(g)?;
    let n = g.n();
    let mut conn = vec![vec![INFINITE_CUT; n]; n];
    for (mask, &w) in weights.iter().enumerate().skip(1) {
        let side = side_of_mask(n, mask as u64);
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && w < conn[u][v] {
                    conn[u][v] = w;
                    conn[v][u] = w;
                }
            }
        }
    }
    Ok(conn)
}

/// Minimum cut value by Stoer–Wagner on a dense matrix; `O(n^3)`.
pub fn stoer_wagner(g: &StaticGraph) -> Weight {
    let n = g.n();
    if n <= 1 {
        return INFINITE_CUT;
    }
    let mut w = vec![vec![0 as Weight; n]; n];
    for (u, v, c) in g.edges() {
        w[u][v] = c;
        w[v][u] = c;
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = INFINITE_CUT;
    while active.len() > 1 {
        let k = active.len();
        let mut key = vec![0 as Weight; k];
        let mut added = vec![false; k];
        let mut prev = 0;
        let mut last = 0;
        for step in 0..k {
            let sel = (0..k)
                .filter(|&i| !added[i])
                .max_by_key(|&i| (key[i], std::cmp::Reverse(i)))
                .expect("an unadded vertex remains");
            added[sel] = true;
            if step == k - 1 {
                best = best.min(key[sel]);
                last = sel;
            } else {
                prev = sel;
                for i in 0..k {
                    if !added[i] {
                        key[i] += w[active[sel]][active[i]];
                    }
                }
            }
        }
        let (a, b) = (active[prev], active[last]);
        for &x in &active {
            w[a][x] += w[b][x];
            w[x][a] = w[a][x];
        }
        w[a][a] = 0;
        active.remove(last);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> StaticGraph {
        StaticGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1))).unwrap()
    }

    #[test]
    fn cycle_and_triangle() {
        let c4 = oracle_mincut(&cycle(4)).unwrap();
        assert_eq!(c4.lambda, 2);
        assert_eq!(c4.sides.len(), 6);
        let k3 = oracle_mincut(&cycle(3)).unwrap();
        assert_eq!((k3.lambda, k3.sides.len()), (2, 3));
    }

    #[test]
    fn refuses_large_graphs() {
        assert!(oracle_mincut(&cycle(17)).is_err());
    }

    #[test]
    fn stoer_wagner_on_cycles_and_dumbbell() {
        assert_eq!(stoer_wagner(&cycle(7)), 2);
        let mut edges = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j, 3));
                }
            }
        }
        edges.push((0, 4, 1));
        let g = StaticGraph::from_edges(8, edges).unwrap();
        assert_eq!(stoer_wagner(&g), 1);
        assert_eq!(oracle_mincut(&g).unwrap().lambda, 1);
    }

    #[test]
    fn st_cut_on_path() {
        let g = StaticGraph::from_edges(3, [(0, 1, 3), (1, 2, 2)]).unwrap();
        assert_eq!(min_st_cut(&g, 0, &[2]).unwrap(), 2);
        let conn = pairwise_connectivity(&g).unwrap();
        assert_eq!((conn[0][1], conn[0][2], conn[1][2]), (3, 2, 2));
    }
}
