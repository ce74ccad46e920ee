//! Instance families shared by the integration suites.
#![allow(dead_code)]

use mincut_core::generators::random_connected;
use mincut_core::{StaticGraph, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Small weighted graph number `i` of a reproducible family: mostly
/// connected graphs of varying density, every tenth one an arbitrary and
/// possibly disconnected edge set.
pub fn small_graph(i: u64, max_n: usize, max_w: Weight) -> StaticGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let n = rng.gen_range(2..=max_n);
    let pairs = n * (n - 1) / 2;
    if i % 10 == 9 {
        let m = rng.gen_range(0..=pairs);
        let edges: Vec<_> = (0..m)
            .map(|_| {
                let u = rng.gen_range(0..n);
                (u, (u + rng.gen_range(1..n)) % n, rng.gen_range(1..=max_w))
            })
            .collect();
        return StaticGraph::from_edges(n, edges).unwrap();
    }
    let extra = rng.gen_range(0..=pairs);
    random_connected(n, extra, max_w, rng.gen())
}

/// Unweighted cycle on `n` vertices.
pub fn cycle(n: usize) -> StaticGraph {
    StaticGraph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n, 1))).unwrap()
}

pub fn sorted(mut sides: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    sides.sort();
    sides
}

/// Size of the smaller side.
pub fn smaller_side(side: &[bool]) -> usize {
    let k = side.iter().filter(|&&b| b).count();
    k.min(side.len() - k)
}
