//! Instance generators.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamic::{Batch, Event, Stream};
use crate::error::{Error, Result};
use crate::graph::StaticGraph;
use crate::Weight;

/// Clustered Erdős–Rényi graph.
///
/// Draws `n(n-1)/2 * density_pct / 100` distinct vertex pairs uniformly with
/// weights uniform in `[1, 100]`. Vertices are split into `clusters`
/// contiguous id ranges and every intra-cluster weight is multiplied by `n`.
pub fn gen_clustered_er(n: usize, density_pct: u32, clusters: usize, seed: u64) -> Result<StaticGraph> {
    if clusters == 0 || clusters > n.max(1) {
        return Err(Error::usage(format!("cluster count {clusters} must lie in 1..={n}")));
    }
    if density_pct > 100 {
        return Err(Error::usage(format!("density {density_pct}% exceeds 100%")));
    }
    let pairs = (n as u128) * (n as u128).saturating_sub(1) / 2;
    let m = pairs * density_pct as u128 / 100;
    if pairs > usize::MAX as u128 || (100u128 * n as u128) * pairs > Weight::MAX as u128 >> 2 {
        return Err(Error::Overflow);
    }
    let (pairs, m) = (pairs as usize, m as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cluster_of = |v: usize| v * clusters / n;
    let mut edges = Vec::with_capacity(m);
    for idx in sample(&mut rng, pairs, m).into_iter() {
        let (u, v) = pair_of_index(idx, n);
        let mut w: Weight = rng.gen_range(1..=100);
        if cluster_of(u) == cluster_of(v) {
            w *= n as Weight;
        }
        edges.push((u, v, w));
    }
    StaticGraph::from_edges(n, edges)
}

/// Inverse of the row-major enumeration of pairs `u < v`.
fn pair_of_index(mut idx: usize, n: usize) -> (usize, usize) {
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
        u += 1;
    }
}

/// Uniform random connected graph: a random spanning tree plus extra edges.
pub fn random_connected(n: usize, extra_edges: usize, max_weight: Weight, seed: u64) -> StaticGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v, rng.gen_range(1..=max_weight)));
    }
    if n >= 2 {
        for _ in 0..extra_edges {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.push((u, v, rng.gen_range(1..=max_weight)));
            }
        }
    }
    StaticGraph::from_edges(n, edges).expect("generated weights are small")
}

/// Random fully dynamic update sequence on `n` vertices starting from the
/// empty graph. Each step deletes a present edge with probability
/// `delete_pct` percent (when one exists) and otherwise inserts a random
/// pair with weight in `[1, max_weight]`. Every update is its own batch.
pub fn random_update_stream(n: usize, updates: usize, max_weight: Weight, delete_pct: u32, seed: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: Vec<(usize, usize)> = Vec::new();
    let mut batches = Vec::with_capacity(updates);
    if n < 2 {
        return Stream { n, batches };
    }
    for ts in 0..updates as u64 {
        let event = if !present.is_empty() && rng.gen_range(0..100) < delete_pct {
            let (u, v) = present.swap_remove(rng.gen_range(0..present.len()));
            Event::Delete { u, v }
        } else {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            let key = (u.min(v), u.max(v));
            if !present.contains(&key) {
                present.push(key);
            }
            Event::Insert { u, v, w: rng.gen_range(1..=max_weight) }
        };
        batches.push(Batch { ts, events: vec![event] });
    }
    Stream { n, batches }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing_covers_all_pairs() {
        let n = 6;
        let got: Vec<_> = (0..15).map(|i| pair_of_index(i, n)).collect();
        let mut want = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                want.push((u, v));
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn full_density_is_complete() {
        let g = gen_clustered_er(12, 100, 3, 7).unwrap();
        assert_eq!(g.m(), 66);
    }

    #[test]
    fn single_cluster_scales_every_edge() {
        let g = gen_clustered_er(20, 30, 1, 3).unwrap();
        assert!(g.edges().all(|(_, _, w)| w % 20 == 0 && w >= 20));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen_clustered_er(10, 10, 0, 1).is_err());
        assert!(gen_clustered_er(10, 101, 2, 1).is_err());
    }

    #[test]
    fn update_streams_only_delete_present_edges() {
        let s = random_update_stream(6, 500, 5, 40, 9);
        assert_eq!(s.batches.len(), 500);
        let mut present = std::collections::HashSet::new();
        let mut deletions = 0;
        for b in &s.batches {
            match b.events[0] {
                Event::Insert { u, v, .. } => {
                    assert_ne!(u, v);
                    present.insert((u.min(v), u.max(v)));
                }
                Event::Delete { u, v } => {
                    assert!(present.remove(&(u, v)));
                    deletions += 1;
                }
            }
        }
        assert!(deletions > 100);
    }
}
