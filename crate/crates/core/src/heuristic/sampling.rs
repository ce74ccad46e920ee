//! Random edge contraction with weight-proportional sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{bulk_contract, StaticGraph};
use crate::union_find::UnionFind;
use crate::Weight;

/// Draws edges with probability proportional to their weight by binary
/// search over the running weight sums.
#[derive(Debug, Clone)]
pub struct WeightedEdgeSampler {
    prefix: Vec<Weight>,
    edges: Vec<(usize, usize)>,
}

impl WeightedEdgeSampler {
    pub fn new(g: &StaticGraph) -> Self {
        let mut prefix = Vec::with_capacity(g.m());
        let mut edges = Vec::with_capacity(g.m());
        let mut sum: Weight = 0;
        for (u, v, w) in g.edges() {
            sum += w;
            prefix.push(sum);
            edges.push((u, v));
        }
        WeightedEdgeSampler { prefix, edges }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Index of the sampled edge in `StaticGraph::edges` order.
    pub fn sample_index<R: Rng>(&self, rng: &mut R) -> Option<usize> {
        let total = *self.prefix.last()?;
        let x = rng.gen_range(0..total);
        Some(self.prefix.partition_point(|&p| p <= x))
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Option<(usize, usize)> {
        self.sample_index(rng).map(|i| self.edges[i])
    }
}

/// Unions sampled edges until at most `max(2, ceil(alpha * n))` blocks
/// remain, then contracts. Also returns the block of every input vertex.
///
/// Sampling stops early after a bounded number of draws, which only
/// happens when the remaining edges are concentrated inside blocks.
pub fn random_contract_map(g: &StaticGraph, alpha: f64, seed: u64) -> (StaticGraph, Vec<usize>) {
    let n = g.n();
    let mut uf = UnionFind::new(n);
    let sampler = WeightedEdgeSampler::new(g);
    let target = ((alpha * n as f64).ceil() as usize).max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    let cap = 8 * g.m() + 64;
    while uf.blocks() > target && attempts < cap && !sampler.is_empty() {
        attempts += 1;
        if let Some((u, v)) = sampler.sample(&mut rng) {
            uf.union(u, v);
        }
    }
    bulk_contract(g, &mut uf)
}

/// Contracted graph of [`random_contract_map`].
pub fn random_contract(g: &StaticGraph, alpha: f64, seed: u64) -> StaticGraph {
    random_contract_map(g, alpha, seed).0
}
