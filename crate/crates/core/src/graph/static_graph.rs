use std::ops::Range;

use log::warn;

use crate::error::{Error, Result};
use crate::Weight;

/// Largest admissible total edge weight. Leaves two bits of headroom so that
/// doubled degrees and signed scan accumulators never overflow.
pub const MAX_TOTAL_WEIGHT: Weight = Weight::MAX >> 2;

/// Immutable weighted graph in compressed adjacency form.
///
/// Every undirected edge is stored as two half-edges. Neighbour lists are
/// sorted by target id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticGraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<Weight>,
    degrees: Vec<Weight>,
    total: Weight,
}

impl StaticGraph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        StaticGraph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            weights: Vec::new(),
            degrees: vec![0; n],
            total: 0,
        }
    }

    /// Builds a simple graph from an undirected edge list.
    ///
    /// Parallel edges are merged by summing their weights and self-loops are
    /// dropped with a warning. Zero weights and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        let mut half = Vec::new();
        for (i, (u, v, w)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::usage(format!(
                    "edge {i} ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if w == 0 {
                return Err(Error::usage(format!("edge {i} ({u}, {v}) has zero weight")));
            }
            if u == v {
                warn!("dropping self-loop at vertex {u}");
                continue;
            }
            half.push((u, v, w));
            half.push((v, u, w));
        }
        Self::from_half_edges(n, half)
    }

    /// Builds from half-edges that already come in symmetric pairs.
    pub(crate) fn from_half_edges(n: usize, mut half: Vec<(usize, usize, Weight)>) -> Result<Self> {
        half.sort_unstable_by_key(|&(u, v, _)| (u, v));
        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::with_capacity(half.len());
        let mut weights: Vec<Weight> = Vec::with_capacity(half.len());
        let mut last: Option<(usize, usize)> = None;
        for (u, v, w) in half {
            if last == Some((u, v)) {
                let slot = weights.last_mut().expect("merged edge has a predecessor");
                *slot = slot.checked_add(w).ok_or(Error::Overflow)?;
            } else {
                targets.push(v);
                weights.push(w);
                offsets[u + 1] += 1;
                last = Some((u, v));
            }
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        Self::from_csr(offsets, targets, weights)
    }

    /// Assembles a graph from raw CSR arrays, validating the weight budget.
    pub(crate) fn from_csr(offsets: Vec<usize>, targets: Vec<usize>, weights: Vec<Weight>) -> Result<Self> {
        let n = offsets.len() - 1;
        let mut degrees = vec![0 as Weight; n];
        let mut doubled: Weight = 0;
        for v in 0..n {
            let mut d: Weight = 0;
            for e in offsets[v]..offsets[v + 1] {
                d = d.checked_add(weights[e]).ok_or(Error::Overflow)?;
            }
            degrees[v] = d;
            doubled = doubled.checked_add(d).ok_or(Error::Overflow)?;
        }
        let total = doubled / 2;
        if total > MAX_TOTAL_WEIGHT {
            return Err(Error::Overflow);
        }
        Ok(StaticGraph {
            offsets,
            targets,
            weights,
            degrees,
            total,
        })
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    /// Number of stored half-edges, twice the edge count.
    pub fn half_edges(&self) -> usize {
        self.targets.len()
    }

    /// Sum of all undirected edge weights.
    pub fn total_weight(&self) -> Weight {
        self.total
    }

    /// Half-edge index range of `v`.
    pub fn edge_range(&self, v: usize) -> Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn target(&self, e: usize) -> usize {
        self.targets[e]
    }

    pub fn weight(&self, e: usize) -> Weight {
        self.weights[e]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, Weight)> + '_ {
        self.edge_range(v).map(move |e| (self.targets[e], self.weights[e]))
    }

    /// Number of incident edges.
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn weighted_degree(&self, v: usize) -> Weight {
        self.degrees[v]
    }

    /// Weight of edge `{u, v}`, zero when absent.
    pub fn edge_weight(&self, u: usize, v: usize) -> Weight {
        let range = self.edge_range(u);
        match self.targets[range.clone()].binary_search(&v) {
            Ok(i) => self.weights[range.start + i],
            Err(_) => 0,
        }
    }

    /// Undirected edges `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Weight)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Weight of the cut between `side` and its complement.
    pub fn cut_weight(&self, side: &[bool]) -> Weight {
        self.edges()
            .filter(|&(u, v, _)| side[u] != side[v])
            .map(|(_, _, w)| w)
            .sum()
    }

    /// True when every edge has weight one.
    pub fn is_unit_weight(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Induced subgraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> StaticGraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut offsets = Vec::with_capacity(vertices.len() + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0);
        for &v in vertices {
            let mut row: Vec<(usize, Weight)> = self
                .neighbors(v)
                .filter(|&(t, _)| local[t] != usize::MAX)
                .map(|(t, w)| (local[t], w))
                .collect();
            row.sort_unstable();
            for (t, w) in row {
                targets.push(t);
                weights.push(w);
            }
            offsets.push(targets.len());
        }
        StaticGraph::from_csr(offsets, targets, weights).expect("subgraph weights fit")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_parallel_edges_and_drops_loops() {
        let g = StaticGraph::from_edges(3, [(0, 1, 3), (1, 0, 4), (2, 2, 9), (1, 2, 1)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edge_weight(0, 1), 7);
        assert_eq!(g.weighted_degree(1), 8);
        assert_eq!(g.total_weight(), 8);
    }

    #[test]
    fn rejects_zero_weight() {
        assert!(matches!(
            StaticGraph::from_edges(2, [(0, 1, 0)]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn rejects_overflowing_totals() {
        let big = Weight::MAX / 2;
        assert!(matches!(
            StaticGraph::from_edges(3, [(0, 1, big), (1, 2, big)]),
            Err(Error::Overflow)
        ));
    }

    #[test]
    fn half_edges_are_symmetric() {
        let g = StaticGraph::from_edges(4, [(0, 1, 2), (1, 2, 5), (2, 3, 1), (3, 0, 7)]).unwrap();
        for u in 0..g.n() {
            for (v, w) in g.neighbors(u) {
                assert_eq!(g.edge_weight(v, u), w);
            }
            let sum: Weight = g.neighbors(u).map(|(_, w)| w).sum();
            assert_eq!(sum, g.weighted_degree(u));
        }
    }
}
