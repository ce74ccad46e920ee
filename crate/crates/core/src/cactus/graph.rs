use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::StaticGraph;
use crate::oracle::canonical;
use crate::{Weight, INFINITE_CUT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Carries the full cut value.
    Tree,
    /// Member of the cycle with this id; carries half the cut value.
    Cycle(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CactusEdge {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
}

/// Cactus representation of a set of minimum cuts.
///
/// Every tree edge and every pair of edges on a common cycle separates the
/// graph vertices into a minimum cut. Node contents partition the vertices;
/// nodes may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CactusGraph {
    nodes: Vec<Vec<usize>>,
    tree: Vec<(usize, usize)>,
    /// Node sequences in cyclic order, each of length at least three once
    /// normalized.
    cycles: Vec<Vec<usize>>,
    lambda: Weight,
    vertex_count: usize,
    mutations: u64,
}

/// How a node hangs below its parent when the cactus is rooted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Parent {
    Root,
    Tree(usize),
    /// Cycle id; the parent is the first node of the cycle reached.
    Cycle(usize),
}

/// Cactus rooted at a node: each cycle has a top node, and all its other
/// nodes are children of the top.
pub(crate) struct Rooted {
    pub preorder: Vec<usize>,
    pub parent: Vec<Parent>,
    /// Per cycle: top node, then the remaining nodes in cycle order.
    pub cycle_order: Vec<Vec<usize>>,
    pub children: Vec<Vec<usize>>,
}

impl CactusGraph {
    /// One node holding every vertex: no cut is represented.
    pub fn single(vertex_count: usize, lambda: Weight) -> Self {
        CactusGraph {
            nodes: vec![(0..vertex_count).collect()],
            tree: Vec::new(),
            cycles: Vec::new(),
            lambda,
            vertex_count,
            mutations: 0,
        }
    }

    /// Builds from explicit parts and validates the structure.
    pub fn from_parts(
        nodes: Vec<Vec<usize>>,
        tree: Vec<(usize, usize)>,
        cycles: Vec<Vec<usize>>,
        lambda: Weight,
        vertex_count: usize,
    ) -> Result<Self> {
        let c = CactusGraph { nodes, tree, cycles, lambda, vertex_count, mutations: 0 };
        c.validate()?;
        Ok(c)
    }

    /// Parts without validation, for internal assembly.
    pub(crate) fn raw(
        nodes: Vec<Vec<usize>>,
        tree: Vec<(usize, usize)>,
        cycles: Vec<Vec<usize>>,
        lambda: Weight,
        vertex_count: usize,
    ) -> Self {
        CactusGraph { nodes, tree, cycles, lambda, vertex_count, mutations: 0 }
    }

    pub fn lambda(&self) -> Weight {
        self.lambda
    }

    pub fn set_lambda(&mut self, lambda: Weight) {
        self.lambda = lambda;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn n_star(&self) -> usize {
        self.nodes.len()
    }

    pub fn m_star(&self) -> usize {
        self.tree.len() + self.cycles.iter().map(Vec::len).sum::<usize>()
    }

    pub fn nodes(&self) -> &[Vec<usize>] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &[usize] {
        &self.nodes[i]
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Count of structural modifications since construction.
    pub fn mutations(&self) -> u64 {
        self.mutations
    }

    pub fn nonempty_nodes(&self) -> usize {
        self.nodes.iter().filter(|c| !c.is_empty()).count()
    }

    /// All edges; cycle edges join consecutive cycle nodes.
    pub fn edges(&self) -> Vec<CactusEdge> {
        let mut out: Vec<CactusEdge> = self.tree.iter().map(|&(a, b)| CactusEdge { a, b, kind: EdgeKind::Tree }).collect();
        for (id, cycle) in self.cycles.iter().enumerate() {
            for i in 0..cycle.len() {
                out.push(CactusEdge { a: cycle[i], b: cycle[(i + 1) % cycle.len()], kind: EdgeKind::Cycle(id) });
            }
        }
        out
    }

    /// Node holding each vertex.
    pub fn node_of(&self) -> Vec<usize> {
        let mut of = vec![usize::MAX; self.vertex_count];
        for (i, contents) in self.nodes.iter().enumerate() {
            for &v in contents {
                of[v] = i;
            }
        }
        of
    }

    /// Replaces every vertex `v` in node contents by `f(v)` and sets the
    /// new vertex count.
    pub(crate) fn relabel(&mut self, vertex_count: usize, mut f: impl FnMut(usize) -> Vec<usize>) {
        for node in self.nodes.iter_mut() {
            *node = node.iter().flat_map(|&v| f(v)).collect();
        }
        self.vertex_count = vertex_count;
    }

    /// Node whose contents include `v`.
    pub fn find_node(&self, v: usize) -> Option<usize> {
        self.nodes.iter().position(|c| c.contains(&v))
    }

    fn touch(&mut self) {
        self.mutations += 1;
    }

    pub(crate) fn rooted(&self) -> Rooted {
        let k = self.nodes.len();
        let mut tree_adj = vec![Vec::new(); k];
        for &(a, b) in &self.tree {
            tree_adj[a].push(b);
            tree_adj[b].push(a);
        }
        let mut cycles_at = vec![Vec::new(); k];
        for (id, cycle) in self.cycles.iter().enumerate() {
            for (pos, &x) in cycle.iter().enumerate() {
                cycles_at[x].push((id, pos));
            }
        }
        let mut parent = vec![None; k];
        let mut cycle_order = vec![Vec::new(); self.cycles.len()];
        let mut cycle_seen = vec![false; self.cycles.len()];
        let mut children = vec![Vec::new(); k];
        let mut preorder = Vec::with_capacity(k);
        for root in 0..k {
            if parent[root].is_some() {
                continue;
            }
            parent[root] = Some(Parent::Root);
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                preorder.push(x);
                for &y in &tree_adj[x] {
                    if parent[y].is_none() {
                        parent[y] = Some(Parent::Tree(x));
                        children[x].push(y);
                        stack.push(y);
                    }
                }
                for &(id, pos) in &cycles_at[x] {
                    if cycle_seen[id] {
                        continue;
                    }
                    cycle_seen[id] = true;
                    let cycle = &self.cycles[id];
                    let order: Vec<usize> = (0..cycle.len()).map(|i| cycle[(pos + i) % cycle.len()]).collect();
                    for &y in &order[1..] {
                        if parent[y].is_none() {
                            parent[y] = Some(Parent::Cycle(id));
                            children[x].push(y);
                            stack.push(y);
                        }
                    }
                    cycle_order[id] = order;
                }
            }
        }
        Rooted {
            preorder,
            parent: parent.into_iter().map(|p| p.unwrap_or(Parent::Root)).collect(),
            cycle_order,
            children,
        }
    }

    /// Vertex sets below every node of the rooted cactus.
    fn subtree_sets(&self, rooted: &Rooted) -> Vec<Vec<bool>> {
        let mut sets: Vec<Vec<bool>> = vec![vec![false; self.vertex_count]; self.nodes.len()];
        for &x in rooted.preorder.iter().rev() {
            let mut set = std::mem::take(&mut sets[x]);
            for &v in &self.nodes[x] {
                set[v] = true;
            }
            for &c in &rooted.children[x] {
                for (s, &b) in set.iter_mut().zip(&sets[c]) {
                    *s |= b;
                }
            }
            sets[x] = set;
        }
        sets
    }

    /// Every represented cut as a canonical side (vertex 0 outside),
    /// deduplicated. Nonempty proper sides only.
    ///
    /// An edgeless cactus with several nonempty nodes stands for a
    /// disconnected graph, where every union of components is a cut of
    /// weight zero; those `2^(k-1) - 1` sides are all listed.
    pub fn enumerate_cuts(&self) -> Vec<Vec<bool>> {
        if self.tree.is_empty() && self.cycles.is_empty() {
            return self.component_unions();
        }
        let rooted = self.rooted();
        let sets = self.subtree_sets(&rooted);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut push = |side: Vec<bool>| {
            let side = canonical(&side);
            if side.iter().any(|&b| b) && seen.insert(side.clone()) {
                out.push(side);
            }
        };
        for &(a, b) in &self.tree {
            let child = if rooted.parent[b] == Parent::Tree(a) { b } else { a };
            push(sets[child].clone());
        }
        for order in &rooted.cycle_order {
            let r = order.len();
            // Intervals of the non-top nodes; the rest is the complement.
            for i in 1..r {
                let mut acc = vec![false; self.vertex_count];
                for &node in &order[i..r] {
                    for (s, &b) in acc.iter_mut().zip(&sets[node]) {
                        *s |= b;
                    }
                    push(acc.clone());
                }
            }
        }
        out
    }

    fn component_unions(&self) -> Vec<Vec<bool>> {
        let parts: Vec<&Vec<usize>> = self.nodes.iter().filter(|c| !c.is_empty()).collect();
        let k = parts.len();
        if k < 2 {
            return Vec::new();
        }
        assert!(k < usize::BITS as usize, "too many components to enumerate");
        // Keep the part holding the smallest vertex outside, so sides come out canonical.
        let anchor = (0..k).min_by_key(|&i| parts[i].iter().min()).expect("k >= 2");
        let others: Vec<usize> = (0..k).filter(|&i| i != anchor).collect();
        (1..1usize << others.len())
            .map(|mask| {
                let mut side = vec![false; self.vertex_count];
                for (bit, &i) in others.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        parts[i].iter().for_each(|&v| side[v] = true);
                    }
                }
                canonical(&side)
            })
            .collect()
    }

    /// Checks the partition of vertices and the cactus shape.
    pub fn validate(&self) -> Result<()> {
        let k = self.nodes.len();
        if k == 0 {
            return Err(Error::invariant("cactus has no nodes"));
        }
        let mut seen = vec![false; self.vertex_count];
        for contents in &self.nodes {
            for &v in contents {
                if v >= self.vertex_count || seen[v] {
                    return Err(Error::invariant(format!("vertex {v} is missing from the range or listed twice")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::invariant(format!("vertex {v} is not in any cactus node")));
        }
        for &(a, b) in &self.tree {
            if a >= k || b >= k || a == b {
                return Err(Error::invariant(format!("bad tree edge ({a}, {b})")));
            }
        }
        let mut block_edges = self.tree.len();
        for cycle in &self.cycles {
            if cycle.len() < 3 {
                return Err(Error::invariant("cycle shorter than three nodes"));
            }
            let distinct: HashSet<_> = cycle.iter().collect();
            if distinct.len() != cycle.len() || cycle.iter().any(|&x| x >= k) {
                return Err(Error::invariant("cycle repeats a node or names an unknown node"));
            }
            block_edges += cycle.len() - 1;
        }
        // Connected components of the block graph must be trees of blocks.
        let rooted = self.rooted();
        let roots = rooted.parent.iter().filter(|&&p| p == Parent::Root).count();
        if block_edges + roots != k {
            return Err(Error::invariant("edges and cycles do not form a cactus"));
        }
        if self.lambda == 0 && block_edges > 0 {
            return Err(Error::invariant("cactus for a disconnected graph must be edgeless"));
        }
        if self.lambda > 0 && roots != 1 {
            return Err(Error::invariant("cactus of a connected graph must be connected"));
        }
        Ok(())
    }

    /// Validates the structure and that every represented cut has weight
    /// exactly lambda in `g`.
    pub fn validate_against(&self, g: &StaticGraph) -> Result<()> {
        self.validate()?;
        if g.n() != self.vertex_count {
            return Err(Error::invariant("cactus and graph disagree on the vertex count"));
        }
        for side in self.enumerate_cuts() {
            let w = g.cut_weight(&side);
            if w != self.lambda {
                return Err(Error::invariant(format!("represented cut has weight {w}, expected {}", self.lambda)));
            }
        }
        Ok(())
    }

    /// Side of the first represented cut, if any.
    pub fn first_cut(&self) -> Option<Vec<bool>> {
        let rooted = self.rooted();
        let sets = self.subtree_sets(&rooted);
        if let Some(&(a, b)) = self.tree.first() {
            let child = if rooted.parent[b] == Parent::Tree(a) { b } else { a };
            return Some(sets[child].clone());
        }
        let order = rooted.cycle_order.first()?;
        Some(sets[order[1]].clone())
    }

    // ---- structural edits -------------------------------------------------

    pub fn add_node(&mut self, contents: Vec<usize>) -> usize {
        self.touch();
        self.nodes.push(contents);
        self.nodes.len() - 1
    }

    pub fn add_tree_edge(&mut self, a: usize, b: usize) {
        self.touch();
        self.tree.push((a, b));
    }

    pub fn add_cycle(&mut self, nodes: Vec<usize>) {
        self.touch();
        self.cycles.push(nodes);
    }

    /// Removes the listed vertices from node `x`.
    pub fn take_vertices(&mut self, x: usize, vertices: &[usize]) {
        self.touch();
        let drop: HashSet<usize> = vertices.iter().copied().collect();
        self.nodes[x].retain(|v| !drop.contains(v));
    }

    pub fn extend_node(&mut self, x: usize, vertices: &[usize]) {
        self.touch();
        self.nodes[x].extend_from_slice(vertices);
    }

    /// Hangs a new node with `contents` below `x` by a tree edge.
    pub fn attach_leaf(&mut self, x: usize, contents: Vec<usize>) -> usize {
        let y = self.add_node(contents);
        self.tree.push((x, y));
        y
    }

    /// Places a new node between adjacent nodes `a` and `b`. A tree edge
    /// becomes a triangle; a cycle edge is subdivided.
    pub fn insert_between(&mut self, a: usize, b: usize, contents: Vec<usize>) -> Result<usize> {
        if let Some(i) = self.tree.iter().position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)) {
            self.tree.swap_remove(i);
            let v = self.add_node(contents);
            self.cycles.push(vec![a, v, b]);
            return Ok(v);
        }
        for id in 0..self.cycles.len() {
            let cycle = &self.cycles[id];
            let r = cycle.len();
            for i in 0..r {
                let (x, y) = (cycle[i], cycle[(i + 1) % r]);
                if (x, y) == (a, b) || (x, y) == (b, a) {
                    let v = self.add_node(contents);
                    self.cycles[id].insert(i + 1, v);
                    return Ok(v);
                }
            }
        }
        Err(Error::invariant(format!("cactus nodes {a} and {b} are not adjacent")))
    }

    /// Merges node `b` into node `a`. A tree edge between them disappears;
    /// a common cycle is squeezed into two cycles through the merged node.
    /// Node ids are compacted afterwards; returns the new id of the merged
    /// node.
    pub fn merge_nodes(&mut self, a: usize, b: usize) -> usize {
        if a == b {
            return a;
        }
        self.touch();
        let moved = std::mem::take(&mut self.nodes[b]);
        self.nodes[a].extend(moved);
        self.tree.retain(|&(x, y)| !((x, y) == (a, b) || (x, y) == (b, a)));
        for e in self.tree.iter_mut() {
            if e.0 == b {
                e.0 = a;
            }
            if e.1 == b {
                e.1 = a;
            }
        }
        let mut next_cycles = Vec::with_capacity(self.cycles.len() + 1);
        for cycle in std::mem::take(&mut self.cycles) {
            let pa = cycle.iter().position(|&x| x == a);
            let pb = cycle.iter().position(|&x| x == b);
            match (pa, pb) {
                (Some(pa), Some(pb)) => {
                    let r = cycle.len();
                    let arc = |from: usize, to: usize| -> Vec<usize> {
                        let mut out = vec![a];
                        let mut i = (from + 1) % r;
                        while i != to {
                            out.push(cycle[i]);
                            i = (i + 1) % r;
                        }
                        out
                    };
                    next_cycles.push(arc(pa, pb));
                    next_cycles.push(arc(pb, pa));
                }
                (None, Some(pb)) => {
                    let mut c = cycle;
                    c[pb] = a;
                    next_cycles.push(c);
                }
                _ => next_cycles.push(cycle),
            }
        }
        self.cycles = next_cycles;
        self.fix_short_cycles();
        self.remove_node(b);
        if a > b {
            a - 1
        } else {
            a
        }
    }

    fn fix_short_cycles(&mut self) {
        let mut kept = Vec::with_capacity(self.cycles.len());
        for cycle in std::mem::take(&mut self.cycles) {
            match cycle.len() {
                0 | 1 => {}
                2 => self.tree.push((cycle[0], cycle[1])),
                _ => kept.push(cycle),
            }
        }
        self.cycles = kept;
    }

    /// Deletes a node that no edge references, shifting higher ids down.
    fn remove_node(&mut self, x: usize) {
        self.nodes.remove(x);
        let shift = |y: usize| if y > x { y - 1 } else { y };
        for e in self.tree.iter_mut() {
            *e = (shift(e.0), shift(e.1));
        }
        for cycle in self.cycles.iter_mut() {
            for y in cycle.iter_mut() {
                *y = shift(*y);
            }
        }
    }

    /// Moves `part` out of node `x` into a new node with no edges. Only
    /// meaningful for edgeless cacti of disconnected graphs.
    pub fn split_node(&mut self, x: usize, part: &[usize]) -> usize {
        self.take_vertices(x, part);
        self.add_node(part.to_vec())
    }

    /// Appends `other` with node ids shifted; returns the shift.
    pub fn absorb(&mut self, other: CactusGraph) -> usize {
        self.touch();
        let offset = self.nodes.len();
        self.nodes.extend(other.nodes);
        self.tree.extend(other.tree.into_iter().map(|(a, b)| (a + offset, b + offset)));
        self.cycles.extend(other.cycles.into_iter().map(|c| c.into_iter().map(|x| x + offset).collect()));
        offset
    }

    /// Sequence of nodes on the unique block path from `from` to `to`:
    /// consecutive entries share a tree edge or a cycle.
    pub fn block_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let k = self.nodes.len();
        // Bipartite block tree: nodes 0..k, then one vertex per cycle.
        let c = self.cycles.len();
        let mut adj = vec![Vec::new(); k + c];
        for &(a, b) in &self.tree {
            adj[a].push(b);
            adj[b].push(a);
        }
        for (id, cycle) in self.cycles.iter().enumerate() {
            for &x in cycle {
                adj[x].push(k + id);
                adj[k + id].push(x);
            }
        }
        let mut prev = vec![usize::MAX; k + c];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &y in &adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut x = to;
        while x != from {
            x = prev[x];
            if x < k {
                path.push(x);
            }
        }
        path.reverse();
        Some(path)
    }

    /// Contracts every node on the block path between `from` and `to` into
    /// one, squeezing each traversed cycle. Returns the merged node id.
    pub fn contract_path(&mut self, from: usize, to: usize) -> Option<usize> {
        let path = self.block_path(from, to)?;
        if path.len() == 1 {
            return Some(from);
        }
        // Merge from the highest id down so pending ids stay valid.
        let mut ids = path;
        let mut keep = ids[0];
        ids.sort_unstable();
        ids.dedup();
        let mut others: Vec<usize> = ids.into_iter().filter(|&x| x != keep).collect();
        others.sort_unstable_by(|a, b| b.cmp(a));
        for x in others {
            keep = self.merge_nodes(keep, x);
        }
        Some(keep)
    }

    /// Removes redundant structure: empty leaves, empty nodes of degree two,
    /// empty nodes that duplicate a cut, and empty three-stars (replaced by
    /// triangles). Short cycles become tree edges.
    pub fn normalize(&mut self) {
        self.fix_short_cycles();
        loop {
            let k = self.nodes.len();
            if k <= 1 {
                return;
            }
            let mut tree_deg = vec![0usize; k];
            for &(a, b) in &self.tree {
                tree_deg[a] += 1;
                tree_deg[b] += 1;
            }
            let mut cyc_deg = vec![0usize; k];
            for cycle in &self.cycles {
                for &x in cycle {
                    cyc_deg[x] += 1;
                }
            }
            let target = (0..k).find(|&x| {
                self.nodes[x].is_empty()
                    && matches!((tree_deg[x], cyc_deg[x]), (0, 0) | (1, 0) | (2, 0) | (3, 0) | (1, 1) | (0, 1))
            });
            let Some(x) = target else { return };
            self.touch();
            let incident: Vec<usize> = self
                .tree
                .iter()
                .filter_map(|&(a, b)| if a == x { Some(b) } else if b == x { Some(a) } else { None })
                .collect();
            match (tree_deg[x], cyc_deg[x]) {
                (0, 0) | (1, 0) => {
                    self.tree.retain(|&(a, b)| a != x && b != x);
                    self.remove_node(x);
                }
                (2, 0) => {
                    self.tree.retain(|&(a, b)| a != x && b != x);
                    self.tree.push((incident[0], incident[1]));
                    self.remove_node(x);
                }
                (3, 0) => {
                    self.tree.retain(|&(a, b)| a != x && b != x);
                    self.cycles.push(incident);
                    self.remove_node(x);
                }
                (1, 1) => {
                    self.merge_nodes(incident[0], x);
                }
                (0, 1) => {
                    for cycle in self.cycles.iter_mut() {
                        cycle.retain(|&y| y != x);
                    }
                    self.fix_short_cycles();
                    self.remove_node(x);
                }
                _ => unreachable!(),
            }
        }
    }

    /// Sorts node contents and, for a canonical comparison, renumbers nodes
    /// by their smallest vertex (empty nodes last in current order).
    pub fn canonical_cuts(&self) -> Vec<Vec<bool>> {
        let mut cuts = self.enumerate_cuts();
        cuts.sort();
        cuts
    }

    // ---- text format ----------------------------------------------------------

    /// Renders the cactus in the line format `c`, `v`, `e`.
    pub fn to_text(&self) -> String {
        let lambda = if self.lambda == INFINITE_CUT { "inf".to_string() } else { self.lambda.to_string() };
        let mut out = String::new();
        let _ = writeln!(out, "c {} {} {}", self.n_star(), self.m_star(), lambda);
        for (i, contents) in self.nodes.iter().enumerate() {
            let mut sorted = contents.clone();
            sorted.sort_unstable();
            let _ = write!(out, "v {i}");
            for v in sorted {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        for &(a, b) in &self.tree {
            let _ = writeln!(out, "e {a} {b} {lambda}/1");
        }
        // Cycles are written in a canonical rotation and direction, so the
        // text survives a parse round trip unchanged.
        let mut cycles: Vec<Vec<usize>> = self.cycles.iter().map(|c| canonical_cycle(c)).collect();
        cycles.sort_unstable();
        for cycle in &cycles {
            for i in 0..cycle.len() {
                let _ = writeln!(out, "e {} {} {lambda}/2", cycle[i], cycle[(i + 1) % cycle.len()]);
            }
        }
        out
    }

    /// Parses the line format written by [`CactusGraph::to_text`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, Weight)> = None;
        let mut nodes: Vec<Option<Vec<usize>>> = Vec::new();
        let mut tree = Vec::new();
        let mut cycle_edges = Vec::new();
        let parse_weight = |s: &str, line: usize| -> Result<Weight> {
            if s == "inf" {
                Ok(INFINITE_CUT)
            } else {
                s.parse().map_err(|_| Error::parse(line, format!("bad cut value {s:?}")))
            }
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let mut tok = raw.split_whitespace();
            let Some(tag) = tok.next() else { continue };
            let mut num = |what: &str| -> Result<usize> {
                tok.next()
                    .ok_or_else(|| Error::parse(line, format!("missing {what}")))?
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad {what}")))
            };
            match tag {
                "c" => {
                    let n = num("node count")?;
                    let m = num("edge count")?;
                    let rest: Vec<&str> = raw.split_whitespace().skip(3).collect();
                    let lambda = match rest.as_slice() {
                        [w] => parse_weight(w, line)?,
                        _ => return Err(Error::parse(line, "header needs exactly three fields")),
                    };
                    header = Some((n, m, lambda));
                    nodes = vec![None; n];
                }
                "v" => {
                    let id = num("node id")?;
                    let slot = nodes.get_mut(id).ok_or_else(|| Error::parse(line, "node id out of range"))?;
                    let contents: Result<Vec<usize>> = raw
                        .split_whitespace()
                        .skip(2)
                        .map(|t| t.parse().map_err(|_| Error::parse(line, format!("bad vertex {t:?}"))))
                        .collect();
                    *slot = Some(contents?);
                }
                "e" => {
                    let a = num("endpoint")?;
                    let b = num("endpoint")?;
                    let w = raw.split_whitespace().nth(3).ok_or_else(|| Error::parse(line, "missing weight"))?;
                    let (numer, den) = w.split_once('/').ok_or_else(|| Error::parse(line, "weight must be num/den"))?;
                    let lambda = header.ok_or_else(|| Error::parse(line, "edge before header"))?.2;
                    if parse_weight(numer, line)? != lambda {
                        return Err(Error::parse(line, "edge weight does not match the cut value"));
                    }
                    match den {
                        "1" => tree.push((a, b)),
                        "2" => cycle_edges.push((a, b)),
                        _ => return Err(Error::parse(line, "denominator must be 1 or 2")),
                    }
                }
                _ => return Err(Error::parse(line, format!("unknown line tag {tag:?}"))),
            }
        }
        let (n, m, lambda) = header.ok_or_else(|| Error::parse(1, "missing header"))?;
        if tree.len() + cycle_edges.len() != m {
            return Err(Error::parse(1, "edge count does not match the header"));
        }
        let nodes: Vec<Vec<usize>> = nodes
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::parse(1, format!("node {i} is not listed"))))
            .collect::<Result<_>>()?;
        if tree.iter().chain(&cycle_edges).any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::parse(1, "edge endpoint out of range"));
        }
        let cycles = split_cycles(n, &cycle_edges)?;
        let vertex_count = nodes.iter().map(Vec::len).sum();
        CactusGraph::from_parts(nodes, tree, cycles, lambda, vertex_count)
    }
}

/// Recovers the simple cycles of a cactus from its cycle edges. In a
/// cactus the only path between the ends of a cycle edge, other than the
/// edge itself, runs around its cycle.
fn split_cycles(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut used = vec![false; edges.len()];
    let mut cycles = Vec::new();
    for start in 0..edges.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = edges[start];
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut queue = VecDeque::from([b]);
        let mut reached = vec![false; n];
        reached[b] = true;
        while let Some(x) = queue.pop_front() {
            if x == a {
                break;
            }
            for &(y, e) in &adj[x] {
                if !used[e] && !reached[y] {
                    reached[y] = true;
                    prev[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        if !reached[a] {
            return Err(Error::parse(1, format!("cycle edge ({a}, {b}) lies on no cycle")));
        }
        let mut cycle = vec![a];
        let mut x = a;
        while let Some((p, e)) = prev[x] {
            used[e] = true;
            cycle.push(p);
            x = p;
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Rotation of `cycle` starting at its smallest node, oriented towards the
/// smaller of that node's two neighbors.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let r = cycle.len();
    let start = (0..r).min_by_key(|&i| cycle[i]).unwrap_or(0);
    let forward: Vec<usize> = (0..r).map(|i| cycle[(start + i) % r]).collect();
    if r > 2 && forward[r - 1] < forward[1] {
        std::iter::once(forward[0]).chain(forward[1..].iter().rev().copied()).collect()
    } else {
        forward
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, lambda: Weight) -> CactusGraph {
        CactusGraph::from_parts((0..n).map(|v| vec![v]).collect(), vec![], vec![(0..n).collect()], lambda, n).unwrap()
    }

    #[test]
    fn triangle_has_three_cuts() {
        assert_eq!(cycle(3, 2).enumerate_cuts().len(), 3);
    }

    #[test]
    fn four_cycle_has_six_cuts() {
        assert_eq!(cycle(4, 2).enumerate_cuts().len(), 6);
    }

    #[test]
    fn tree_cactus_has_one_cut_per_edge() {
        let c = CactusGraph::from_parts(
            vec![vec![0], vec![1], vec![2], vec![3]],
            vec![(0, 1), (1, 2), (1, 3)],
            vec![],
            1,
            4,
        )
        .unwrap();
        assert_eq!(c.enumerate_cuts().len(), 3);
    }

    #[test]
    fn text_round_trip() {
        let c = CactusGraph::from_parts(
            vec![vec![0, 4], vec![1], vec![], vec![2], vec![3], vec![5]],
            vec![(2, 5)],
            vec![vec![0, 1, 2], vec![2, 3, 4]],
            3,
            6,
        )
        .unwrap();
        let text = c.to_text();
        assert!(text.starts_with("c 6 7 3\n"));
        assert!(text.contains("e 0 1 3/2\n"));
        assert!(text.contains("e 2 5 3/1\n"));
        let back = CactusGraph::parse(&text).unwrap();
        assert_eq!(back.canonical_cuts(), c.canonical_cuts());
        assert_eq!(back.to_text().lines().count(), text.lines().count());
    }

    #[test]
    fn squeezing_splits_a_cycle() {
        let mut c = cycle(6, 2);
        let merged = c.contract_path(0, 3).unwrap();
        c.validate().unwrap();
        assert_eq!(c.n_star(), 5);
        assert_eq!(c.cycles().len(), 2);
        assert_eq!(c.node(merged).len(), 2);
    }

    #[test]
    fn squeezing_adjacent_nodes_shortens() {
        let mut c = cycle(4, 2);
        c.contract_path(0, 1).unwrap();
        c.validate().unwrap();
        assert_eq!(c.cycles().len(), 1);
        assert_eq!(c.cycles()[0].len(), 3);
        let mut t = cycle(3, 2);
        t.contract_path(0, 1).unwrap();
        t.validate().unwrap();
        assert_eq!(t.tree_edges().len(), 1);
    }

    #[test]
    fn normalize_turns_empty_star_into_triangle() {
        let mut c = CactusGraph::raw(vec![vec![], vec![0], vec![1], vec![2]], vec![(0, 1), (0, 2), (0, 3)], vec![], 1, 3);
        let before = c.canonical_cuts();
        c.normalize();
        c.validate().unwrap();
        assert_eq!(c.n_star(), 3);
        assert_eq!(c.cycles().len(), 1);
        assert_eq!(c.canonical_cuts(), before);
    }

    #[test]
    fn normalize_merges_duplicated_cuts() {
        let mut c = CactusGraph::raw(vec![vec![0], vec![], vec![1]], vec![(0, 1), (1, 2)], vec![], 1, 2);
        c.normalize();
        c.validate().unwrap();
        assert_eq!(c.n_star(), 2);
        assert_eq!(c.enumerate_cuts().len(), 1);
    }

    #[test]
    fn insert_between_tree_edge_makes_triangle() {
        let mut c = CactusGraph::raw(vec![vec![0], vec![1]], vec![(0, 1)], vec![], 2, 3);
        c.insert_between(0, 1, vec![2]).unwrap();
        c.validate().unwrap();
        assert_eq!(c.enumerate_cuts().len(), 3);
    }
}
