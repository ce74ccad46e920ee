use crate::error::{Error, Result};
use crate::graph::StaticGraph;
use crate::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct HalfEdge {
    target: usize,
    weight: Weight,
    reverse: usize,
}

/// Handle to a half-edge. It goes stale as soon as the graph is modified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeHandle {
    pub vertex: usize,
    pub index: usize,
    version: u64,
}

/// Adjacency-list graph supporting single-edge contraction.
///
/// Contracted vertices become dead slots, so surviving ids stay stable.
/// Each live vertex records the original vertices it stands for.
#[derive(Debug, Clone)]
pub struct MutableGraph {
    adj: Vec<Vec<HalfEdge>>,
    alive: Vec<bool>,
    live: usize,
    degree: Vec<Weight>,
    contained: Vec<Vec<usize>>,
    original_of: Vec<usize>,
    version: u64,
}

impl MutableGraph {
    pub fn new(n: usize) -> Self {
        MutableGraph {
            adj: vec![Vec::new(); n],
            alive: vec![true; n],
            live: n,
            degree: vec![0; n],
            contained: (0..n).map(|v| vec![v]).collect(),
            original_of: (0..n).collect(),
            version: 0,
        }
    }

    pub fn from_static(g: &StaticGraph) -> Self {
        let members: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
        Self::from_static_with_members(g, members)
    }

    /// Builds from `g` where vertex `v` stands for the originals `members[v]`.
    pub fn from_static_with_members(g: &StaticGraph, members: Vec<Vec<usize>>) -> Self {
        let n = g.n();
        let originals: usize = members.iter().map(Vec::len).sum();
        let mut original_of = vec![usize::MAX; originals];
        for (v, list) in members.iter().enumerate() {
            for &o in list {
                original_of[o] = v;
            }
        }
        let mut adj: Vec<Vec<HalfEdge>> = (0..n).map(|v| Vec::with_capacity(g.degree(v))).collect();
        for u in 0..n {
            for (v, w) in g.neighbors(u) {
                if u < v {
                    let iu = adj[u].len();
                    let iv = adj[v].len();
                    adj[u].push(HalfEdge { target: v, weight: w, reverse: iv });
                    adj[v].push(HalfEdge { target: u, weight: w, reverse: iu });
                }
            }
        }
        MutableGraph {
            adj,
            alive: vec![true; n],
            live: n,
            degree: (0..n).map(|v| g.weighted_degree(v)).collect(),
            contained: members,
            original_of,
            version: 0,
        }
    }

    /// Number of live vertices.
    pub fn n(&self) -> usize {
        self.live
    }

    /// Size of the id space, including dead slots.
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    /// Number of original vertices tracked.
    pub fn original_count(&self) -> usize {
        self.original_of.len()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(move |&v| self.alive[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weighted_degree(&self, v: usize) -> Weight {
        self.degree[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, Weight)> + '_ {
        self.adj[v].iter().map(|e| (e.target, e.weight))
    }

    pub fn contained(&self, v: usize) -> &[usize] {
        &self.contained[v]
    }

    /// Current vertex holding original vertex `o`.
    pub fn current_of(&self, o: usize) -> usize {
        self.original_of[o]
    }

    pub fn m(&self) -> usize {
        self.vertices().map(|v| self.adj[v].len()).sum::<usize>() / 2
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Weight {
        self.adj[u]
            .iter()
            .find(|e| e.target == v)
            .map_or(0, |e| e.weight)
    }

    /// Handle to the `index`-th half-edge of `vertex`.
    pub fn handle(&self, vertex: usize, index: usize) -> Option<EdgeHandle> {
        (self.is_alive(vertex) && index < self.adj[vertex].len()).then_some(EdgeHandle {
            vertex,
            index,
            version: self.version,
        })
    }

    /// Handle to the edge `{u, v}` if present.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<EdgeHandle> {
        if !self.is_alive(u) {
            return None;
        }
        let index = self.adj[u].iter().position(|e| e.target == v)?;
        self.handle(u, index)
    }

    /// Endpoints and weight of a live handle.
    pub fn resolve(&self, h: EdgeHandle) -> Result<(usize, usize, Weight)> {
        if h.version != self.version || !self.is_alive(h.vertex) || h.index >= self.adj[h.vertex].len() {
            return Err(Error::usage("stale edge handle"));
        }
        let e = self.adj[h.vertex][h.index];
        Ok((h.vertex, e.target, e.weight))
    }

    fn remove_half_edge(&mut self, v: usize, i: usize) {
        self.adj[v].swap_remove(i);
        if i < self.adj[v].len() {
            let moved = self.adj[v][i];
            self.adj[moved.target][moved.reverse].reverse = i;
        }
    }

    /// Adds `w` to edge `{u, v}`, creating it if needed.
    pub fn add_edge(&mut self, u: usize, v: usize, w: Weight) -> Result<()> {
        if u == v || !self.is_alive(u) || !self.is_alive(v) || w == 0 {
            return Err(Error::usage(format!("cannot add edge ({u}, {v}) with weight {w}")));
        }
        self.version += 1;
        self.degree[u] = self.degree[u].checked_add(w).ok_or(Error::Overflow)?;
        self.degree[v] = self.degree[v].checked_add(w).ok_or(Error::Overflow)?;
        if let Some(i) = self.adj[u].iter().position(|e| e.target == v) {
            let rev = self.adj[u][i].reverse;
            self.adj[u][i].weight += w;
            self.adj[v][rev].weight += w;
            return Ok(());
        }
        let iu = self.adj[u].len();
        let iv = self.adj[v].len();
        self.adj[u].push(HalfEdge { target: v, weight: w, reverse: iv });
        self.adj[v].push(HalfEdge { target: u, weight: w, reverse: iu });
        Ok(())
    }

    /// Removes edge `{u, v}` entirely and returns its weight.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Option<Weight> {
        if !self.is_alive(u) || !self.is_alive(v) {
            return None;
        }
        let i = self.adj[u].iter().position(|e| e.target == v)?;
        self.version += 1;
        let e = self.adj[u][i];
        // Remove the reverse first: removing from u could move its index.
        self.remove_half_edge(v, e.reverse);
        let i = self.adj[u].iter().position(|x| x.target == v).expect("edge still present");
        self.remove_half_edge(u, i);
        self.degree[u] -= e.weight;
        self.degree[v] -= e.weight;
        Some(e.weight)
    }

    /// Contracts the edge behind `h` and returns the surviving vertex.
    pub fn contract_edge(&mut self, h: EdgeHandle) -> Result<usize> {
        let (a, b, _) = self.resolve(h)?;
        Ok(self.merge_vertices(a, b))
    }

    /// Merges two live vertices (adjacent or not) and returns the survivor.
    pub fn merge_vertices(&mut self, a: usize, b: usize) -> usize {
        assert!(a != b && self.is_alive(a) && self.is_alive(b), "merge of invalid vertices");
        self.version += 1;
        // Keep the vertex with the longer list to move fewer edges.
        let (keep, gone) = if self.adj[a].len() >= self.adj[b].len() { (a, b) } else { (b, a) };

        if let Some(i) = self.adj[keep].iter().position(|e| e.target == gone) {
            let e = self.adj[keep][i];
            self.remove_half_edge(gone, e.reverse);
            let i = self.adj[keep].iter().position(|x| x.target == gone).expect("edge present");
            self.remove_half_edge(keep, i);
            self.degree[keep] -= e.weight;
            self.degree[gone] -= e.weight;
        }

        let mut slot = std::collections::HashMap::with_capacity(self.adj[keep].len());
        for (i, e) in self.adj[keep].iter().enumerate() {
            slot.insert(e.target, i);
        }
        let moving = std::mem::take(&mut self.adj[gone]);
        for e in moving {
            let x = e.target;
            if let Some(&i) = slot.get(&x) {
                let rev = self.adj[keep][i].reverse;
                self.adj[keep][i].weight += e.weight;
                self.adj[x][rev].weight += e.weight;
                // x's half-edge back to `gone` sits at e.reverse.
                self.remove_half_edge(x, e.reverse);
            } else {
                let i = self.adj[keep].len();
                self.adj[keep].push(HalfEdge { target: x, weight: e.weight, reverse: e.reverse });
                let back = &mut self.adj[x][e.reverse];
                back.target = keep;
                back.reverse = i;
                slot.insert(x, i);
            }
        }
        self.degree[keep] += self.degree[gone];
        self.degree[gone] = 0;
        let moved = std::mem::take(&mut self.contained[gone]);
        for &o in &moved {
            self.original_of[o] = keep;
        }
        self.contained[keep].extend(moved);
        self.alive[gone] = false;
        self.live -= 1;
        keep
    }

    /// Compact static copy. Returns the graph and, per static id, the live
    /// vertex it came from.
    pub fn to_static(&self) -> (StaticGraph, Vec<usize>) {
        let ids: Vec<usize> = self.vertices().collect();
        let mut local = vec![usize::MAX; self.adj.len()];
        for (i, &v) in ids.iter().enumerate() {
            local[v] = i;
        }
        let mut half = Vec::new();
        for &v in &ids {
            for e in &self.adj[v] {
                half.push((local[v], local[e.target], e.weight));
            }
        }
        let g = StaticGraph::from_half_edges(ids.len(), half).expect("weights already validated");
        (g, ids)
    }

    /// Contracts vertices by `block_of` (indexed by live vertex id, ignored
    /// for dead slots) into a fresh graph with `blocks` vertices.
    pub fn quotient(&self, block_of: &[usize], blocks: usize) -> MutableGraph {
        let mut members = vec![Vec::new(); blocks];
        let mut half = Vec::new();
        for v in self.vertices() {
            let b = block_of[v];
            members[b].extend_from_slice(&self.contained[v]);
            for e in &self.adj[v] {
                let t = block_of[e.target];
                if t != b {
                    half.push((b, t, e.weight));
                }
            }
        }
        let g = StaticGraph::from_half_edges(blocks, half).expect("weights already validated");
        MutableGraph::from_static_with_members(&g, members)
    }

    /// Checks reverse indices, degree caches and the original-vertex partition.
    pub fn check_consistency(&self) -> Result<()> {
        for v in self.vertices() {
            let mut sum: Weight = 0;
            for (i, e) in self.adj[v].iter().enumerate() {
                if !self.is_alive(e.target) {
                    return Err(Error::invariant(format!("edge {v}->{} points at a dead vertex", e.target)));
                }
                let back = self.adj[e.target].get(e.reverse);
                if back.map(|b| (b.target, b.reverse, b.weight)) != Some((v, i, e.weight)) {
                    return Err(Error::invariant(format!("reverse of {v}->{} is inconsistent", e.target)));
                }
                sum += e.weight;
            }
            if sum != self.degree[v] {
                return Err(Error::invariant(format!("degree cache of {v} is stale")));
            }
            for &o in &self.contained[v] {
                if self.original_of[o] != v {
                    return Err(Error::invariant(format!("original {o} maps away from {v}")));
                }
            }
        }
        let counted: usize = self.vertices().map(|v| self.contained[v].len()).sum();
        if counted != self.original_of.len() {
            return Err(Error::invariant("contained lists do not partition the originals"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mg(n: usize, edges: &[(usize, usize, Weight)]) -> MutableGraph {
        MutableGraph::from_static(&StaticGraph::from_edges(n, edges.iter().copied()).unwrap())
    }

    #[test]
    fn path_contraction_keeps_weight() {
        let mut g = mg(3, &[(0, 1, 4), (1, 2, 3)]);
        let h = g.find_edge(0, 1).unwrap();
        let s = g.contract_edge(h).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_weight(s, 2), 3);
        g.check_consistency().unwrap();
    }

    #[test]
    fn triangle_contraction_merges_parallel_edges() {
        let mut g = mg(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        let s = g.contract_edge(g.find_edge(0, 1).unwrap()).unwrap();
        assert_eq!(g.edge_weight(s, 2), 2);
        assert_eq!(g.weighted_degree(s), 2);
        g.check_consistency().unwrap();
    }

    #[test]
    fn parallel_weights_add_up() {
        let mut g = mg(3, &[(0, 1, 1), (0, 2, 3), (1, 2, 4)]);
        let s = g.contract_edge(g.find_edge(0, 1).unwrap()).unwrap();
        assert_eq!(g.edge_weight(s, 2), 7);
        let mut originals = g.contained(s).to_vec();
        originals.sort();
        assert_eq!(originals, vec![0, 1]);
    }

    #[test]
    fn stale_handles_are_rejected() {
        let mut g = mg(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        let h = g.find_edge(2, 3).unwrap();
        g.contract_edge(g.find_edge(0, 1).unwrap()).unwrap();
        assert!(matches!(g.contract_edge(h), Err(Error::Usage(_))));
    }

    #[test]
    fn add_and_remove_edges() {
        let mut g = mg(3, &[(0, 1, 2)]);
        g.add_edge(1, 2, 5).unwrap();
        g.add_edge(0, 1, 1).unwrap();
        assert_eq!(g.edge_weight(1, 0), 3);
        assert_eq!(g.remove_edge(1, 0), Some(3));
        assert_eq!(g.remove_edge(1, 0), None);
        assert_eq!(g.weighted_degree(1), 5);
        g.check_consistency().unwrap();
    }

    #[test]
    fn quotient_tracks_members() {
        let g = mg(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)]);
        let q = g.quotient(&[0, 0, 1, 1], 2);
        assert_eq!(q.n(), 2);
        assert_eq!(q.edge_weight(0, 1), 6);
        assert_eq!(q.current_of(3), 1);
        q.check_consistency().unwrap();
    }
}
