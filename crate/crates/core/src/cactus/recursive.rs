//! Recursive cactus construction driven by maximum flows.
//!
//! Each level first removes low-degree vertices into a log, then repeatedly
//! picks an edge and computes a maximum flow between its endpoints. A flow
//! above the minimum cut lets the endpoints be merged. A flow equal to it
//! exposes the atoms of the minimum `s-t` cuts, and the cactus is assembled
//! from the cactus of the atom quotient and the cacti of the atoms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cactus::family::cactus_from_family;
use crate::cactus::graph::CactusGraph;
use crate::cactus::kernel::strict_marks;
use crate::cactus::reinsert::{Reinsertion, ReinsertionLog};
use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, FlowOptions};
use crate::graph::{contract_by_labels, MutableGraph, StaticGraph};
use crate::Weight;

/// How the next flow problem is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeStrategy {
    /// Uniformly random edge.
    Random,
    /// Vertex of most incident edges and its neighbour of most edges.
    #[default]
    Heavy,
    /// As `Heavy`, by weighted degree.
    WeightedHeavy,
    /// Middle edge of a longest shortest path found by two searches.
    Central,
}

/// Endpoints of the edge chosen by `strategy`. `g` must have an edge.
pub fn select_edge(g: &StaticGraph, strategy: EdgeStrategy, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let n = g.n();
    let best_neighbor = |v: usize, key: &dyn Fn(usize) -> (Weight, usize)| -> usize {
        g.neighbors(v)
            .map(|(u, _)| u)
            .max_by_key(|&u| (key(u), std::cmp::Reverse(u)))
            .expect("vertex has a neighbour")
    };
    match strategy {
        EdgeStrategy::Random => {
            let e = rng.gen_range(0..g.half_edges());
            let v = (0..n).find(|&v| g.edge_range(v).contains(&e)).expect("half-edge has a source");
            (v, g.target(e))
        }
        EdgeStrategy::Heavy | EdgeStrategy::WeightedHeavy => {
            let key = |v: usize| match strategy {
                EdgeStrategy::Heavy => (g.degree(v) as Weight, 0),
                _ => (g.weighted_degree(v), 0),
            };
            let v = (0..n)
                .filter(|&v| g.degree(v) > 0)
                .max_by_key(|&v| (key(v), std::cmp::Reverse(v)))
                .expect("graph has an edge");
            (v, best_neighbor(v, &key))
        }
        EdgeStrategy::Central => {
            let start = (0..n).find(|&v| g.degree(v) > 0).expect("graph has an edge");
            let (far, _) = bfs(g, start);
            let (other, parent) = bfs(g, far);
            let mut path = vec![other];
            while *path.last().expect("nonempty") != far {
                let x = *path.last().expect("nonempty");
                path.push(parent[x]);
            }
            let i = (path.len() - 2) / 2;
            (path[i], path[i + 1])
        }
    }
}

/// Hop-count search; returns the last vertex reached and the parents.
fn bfs(g: &StaticGraph, start: usize) -> (usize, Vec<usize>) {
    let mut parent = vec![usize::MAX; g.n()];
    parent[start] = start;
    let mut queue = std::collections::VecDeque::from([start]);
    let mut last = start;
    while let Some(x) = queue.pop_front() {
        last = x;
        for (y, _) in g.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    (last, parent)
}

/// Settings of the recursive construction.
#[derive(Debug, Clone, Copy)]
pub struct RecursionOptions {
    pub strategy: EdgeStrategy,
    /// Depth of the exact initial labeling in every flow.
    pub gamma: usize,
    /// Rerun the strict contraction rules every this many rounds.
    pub rerun_every: usize,
    pub seed: u64,
}

impl Default for RecursionOptions {
    fn default() -> Self {
        RecursionOptions { strategy: EdgeStrategy::Heavy, gamma: 1, rerun_every: 10, seed: 0 }
    }
}

/// Cactus of all minimum cuts of a connected graph `g` whose minimum cut is
/// `lambda`, or a single node when no cut has weight `lambda`.
pub fn recursive_cactus(g: &StaticGraph, lambda: Weight, options: &RecursionOptions) -> Result<CactusGraph> {
    let mut builder = Builder { options: *options, rng: ChaCha8Rng::seed_from_u64(options.seed) };
    builder.solve(g, lambda, 0)
}

struct Builder {
    options: RecursionOptions,
    rng: ChaCha8Rng,
}

/// Partition of the vertices into atoms of the minimum `s-t` cuts.
struct Atoms {
    of: Vec<usize>,
    members: Vec<Vec<usize>>,
    /// Residual arcs between middle atoms, deduplicated.
    arcs: Vec<Vec<usize>>,
}

impl Builder {
    fn solve(&mut self, g: &StaticGraph, lambda: Weight, depth: usize) -> Result<CactusGraph> {
        match self.level(g, lambda, depth, true)? {
            Some(c) => Ok(c),
            None => self
                .level(g, lambda, depth, false)?
                .ok_or_else(|| Error::invariant("reinsertion failed with cycle reductions disabled")),
        }
    }

    fn level(&mut self, g: &StaticGraph, lambda: Weight, depth: usize, cycle_rule: bool) -> Result<Option<CactusGraph>> {
        let n = g.n();
        if n <= 2 {
            return base(g, lambda).map(Some);
        }
        let mut work = MutableGraph::from_static(g);
        let mut log = ReinsertionLog::new();
        let mut round = depth;
        let (core, ids) = loop {
            reduce_low_degree(&mut work, lambda, &mut log, cycle_rule)?;
            round += 1;
            if self.options.rerun_every > 0 && round % self.options.rerun_every == 0 && work.n() > 2 {
                let (h, ids) = work.to_static();
                let mut marks = strict_marks(&h, lambda);
                if marks.blocks() < h.n() {
                    let (labels, k) = marks.block_labels();
                    let mut block_of = vec![0; work.capacity()];
                    for (i, &v) in ids.iter().enumerate() {
                        block_of[v] = labels[i];
                    }
                    work = work.quotient(&block_of, k);
                    continue;
                }
            }
            let (h, ids) = work.to_static();
            if h.n() <= 2 {
                break (base(&h, lambda)?, ids);
            }
            let (s, t) = select_edge(&h, self.options.strategy, &mut self.rng);
            let mut net = FlowNetwork::from_static(&h);
            let flow = net.max_flow(s, &[t], FlowOptions { target: None, gamma: self.options.gamma })?;
            if flow.value > lambda {
                work.merge_vertices(ids[s], ids[t]);
                continue;
            }
            if flow.value < lambda {
                return Err(Error::invariant(format!(
                    "flow {} between adjacent vertices is below the minimum cut {lambda}",
                    flow.value
                )));
            }
            let atoms = atoms(&net, s, t);
            break (self.split(&h, lambda, s, t, atoms, round)?, ids);
        };
        let mut cactus = core;
        cactus.relabel(n, |i| work.contained(ids[i]).to_vec());
        if !log.replay(&mut cactus, lambda)? {
            return Ok(None);
        }
        cactus.normalize();
        Ok(Some(cactus))
    }

    fn split(&mut self, h: &StaticGraph, lambda: Weight, s: usize, t: usize, atoms: Atoms, depth: usize) -> Result<CactusGraph> {
        let n = h.n();
        let k = atoms.members.len();
        let (xs, xt) = (&atoms.members[0], &atoms.members[1]);
        if k == 2 && (xs.len() == 1 || xt.len() == 1) {
            let (single, other) = if xs.len() == 1 { (s, t) } else { (t, s) };
            let labels: Vec<usize> = (0..n)
                .map(|v| if v == single { other } else { v })
                .map(|v| if v > single { v - 1 } else { v })
                .collect();
            let merged = contract_by_labels(h, &labels, n - 1);
            let mut cactus = self.solve(&merged, lambda, depth + 1)?;
            cactus.relabel(n, |l| vec![if l >= single { l + 1 } else { l }]);
            let x = cactus.find_node(other).expect("merged vertex is placed");
            cactus.attach_leaf(x, vec![single]);
            return Ok(cactus);
        }
        if k < n {
            return self.splice(h, lambda, atoms, depth);
        }
        self.enumerate_family(h, lambda, s, t, &atoms, depth)
    }

    /// Cactus of the atom quotient with each large atom replaced by the
    /// cactus of that atom with the rest of the graph contracted to one
    /// vertex.
    fn splice(&mut self, h: &StaticGraph, lambda: Weight, atoms: Atoms, depth: usize) -> Result<CactusGraph> {
        let n = h.n();
        let k = atoms.members.len();
        let quotient = contract_by_labels(h, &atoms.of, k);
        let mut cactus = self.solve(&quotient, lambda, depth + 1)?;
        let members = &atoms.members;
        cactus.relabel(n + k, |a| if members[a].len() == 1 { vec![members[a][0]] } else { vec![n + a] });
        for (a, part) in members.iter().enumerate().filter(|(_, p)| p.len() >= 2) {
            let outside = part.len();
            let mut local = vec![outside; n];
            for (i, &v) in part.iter().enumerate() {
                local[v] = i;
            }
            let inner_graph = contract_by_labels(h, &local, outside + 1);
            let mut inner = self.solve(&inner_graph, lambda, depth + 1)?;
            inner.relabel(n + k + 1, |i| vec![if i == outside { n + k } else { part[i] }]);
            let z = inner.find_node(n + k).expect("contracted rest is placed");
            inner.take_vertices(z, &[n + k]);
            let x = cactus.find_node(n + a).expect("atom placeholder is placed");
            cactus.take_vertices(x, &[n + a]);
            let offset = cactus.absorb(inner);
            cactus.merge_nodes(x, z + offset);
        }
        cactus.relabel(n, |v| vec![v]);
        cactus.normalize();
        Ok(cactus)
    }

    /// Every atom is a single vertex: combine the cuts that keep `s` and `t`
    /// together with the closed sets of the residual order.
    fn enumerate_family(
        &mut self,
        h: &StaticGraph,
        lambda: Weight,
        s: usize,
        t: usize,
        atoms: &Atoms,
        depth: usize,
    ) -> Result<CactusGraph> {
        let n = h.n();
        let labels: Vec<usize> = (0..n)
            .map(|v| if v == t { s } else { v })
            .map(|v| if v > t { v - 1 } else { v })
            .collect();
        let merged = contract_by_labels(h, &labels, n - 1);
        let inner = self.solve(&merged, lambda, depth + 1)?;
        let mut family: Vec<Vec<bool>> = inner
            .enumerate_cuts()
            .into_iter()
            .map(|side| (0..n).map(|v| side[labels[v]]).collect())
            .collect();
        for closed in closed_sets(&atoms.arcs, 2) {
            let mut side = vec![false; n];
            for &v in &atoms.members[0] {
                side[v] = true;
            }
            for a in closed {
                for &v in &atoms.members[a] {
                    side[v] = true;
                }
            }
            family.push(side);
        }
        cactus_from_family(n, &family, lambda)
    }
}

fn base(g: &StaticGraph, lambda: Weight) -> Result<CactusGraph> {
    match g.n() {
        0 => Err(Error::invariant("empty graph in cactus recursion")),
        1 => Ok(CactusGraph::single(1, lambda)),
        _ => {
            let w = g.edge_weight(0, 1);
            if w < lambda {
                return Err(Error::invariant(format!("two-vertex graph has cut {w} below {lambda}")));
            }
            if w > lambda {
                return Ok(CactusGraph::single(2, lambda));
            }
            Ok(CactusGraph::raw(vec![vec![0], vec![1]], vec![(0, 1)], Vec::new(), lambda, 2))
        }
    }
}

/// Removes vertices of degree one and two that either lie in no minimum
/// cut beyond their own singleton, or sit on a cycle of the cactus.
fn reduce_low_degree(work: &mut MutableGraph, lambda: Weight, log: &mut ReinsertionLog, cycle_rule: bool) -> Result<()> {
    let mut stack: Vec<usize> = work.vertices().collect();
    stack.reverse();
    while let Some(v) = stack.pop() {
        if work.n() <= 2 {
            break;
        }
        if !work.is_alive(v) {
            continue;
        }
        let cv = work.weighted_degree(v);
        if cv < lambda {
            return Err(Error::invariant(format!("vertex of weighted degree {cv} below the minimum cut {lambda}")));
        }
        match work.degree(v) {
            1 => {
                let (u, _) = work.neighbors(v).next().expect("degree one");
                if cv == lambda {
                    log.push(Reinsertion::Leaf {
                        members: work.contained(v).to_vec(),
                        anchor: work.contained(u)[0],
                        weight: cv,
                    });
                }
                stack.push(work.merge_vertices(u, v));
            }
            2 => {
                let pair: Vec<(usize, Weight)> = work.neighbors(v).collect();
                let [(a, wa), (b, wb)] = pair[..] else { unreachable!("degree two") };
                if wa != wb {
                    let (heavy, light) = if wa > wb { (a, b) } else { (b, a) };
                    if cv == lambda {
                        log.push(Reinsertion::Leaf {
                            members: work.contained(v).to_vec(),
                            anchor: work.contained(heavy)[0],
                            weight: cv,
                        });
                    }
                    stack.push(work.merge_vertices(heavy, v));
                    stack.push(light);
                } else if cv == lambda && cycle_rule {
                    log.push(Reinsertion::Cycle {
                        members: work.contained(v).to_vec(),
                        a: work.contained(a)[0],
                        b: work.contained(b)[0],
                    });
                    stack.push(work.merge_vertices(a, v));
                    stack.push(b);
                }
            }
            _ => {}
        }
    }
    Ok(())
}

/// Atoms after a maximum flow from `s` to `t`: the residual source side,
/// the residual sink side, then the strongly connected components of the
/// residual graph on the remaining vertices.
fn atoms(net: &FlowNetwork, s: usize, t: usize) -> Atoms {
    let n = net.n();
    let xs = net.residual_reachable(s);
    let xt = net.residual_coreachable(&[t]);
    let middle: Vec<usize> = (0..n).filter(|&v| !xs[v] && !xt[v]).collect();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in middle.iter().enumerate() {
        local[v] = i;
    }
    let succ: Vec<Vec<usize>> = middle
        .iter()
        .map(|&v| net.residual_successors(v).filter(|&u| local[u] != usize::MAX).map(|u| local[u]).collect())
        .collect();
    let comp = strongly_connected(&succ);
    let comps = comp.iter().copied().max().map_or(0, |c| c + 1);

    let mut of = vec![0; n];
    let mut members = vec![Vec::new(), Vec::new()];
    members.resize(comps + 2, Vec::new());
    for v in 0..n {
        of[v] = if xs[v] {
            0
        } else if xt[v] {
            1
        } else {
            comp[local[v]] + 2
        };
        members[of[v]].push(v);
    }
    let mut arcs = vec![Vec::new(); comps + 2];
    for (i, list) in succ.iter().enumerate() {
        for &j in list {
            let (a, b) = (comp[i] + 2, comp[j] + 2);
            if a != b && !arcs[a].contains(&b) {
                arcs[a].push(b);
            }
        }
    }
    Atoms { of, members, arcs }
}

/// Strongly connected components, iterative Kosaraju.
fn strongly_connected(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    for (v, list) in succ.iter().enumerate() {
        for &u in list {
            pred[u].push(v);
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&u) = succ[v].get(*i) {
                *i += 1;
                if !seen[u] {
                    seen[u] = true;
                    stack.push((u, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = count;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &u in &pred[v] {
                if comp[u] == usize::MAX {
                    comp[u] = count;
                    stack.push(u);
                }
            }
        }
        count += 1;
    }
    comp
}

/// All successor-closed subsets of the nodes `first..arcs.len()`.
fn closed_sets(arcs: &[Vec<usize>], first: usize) -> Vec<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq, Eq)]
    enum State {
        Open,
        In,
        Out,
    }
    let k = arcs.len();
    let mut preds = vec![Vec::new(); k];
    for (a, list) in arcs.iter().enumerate() {
        for &b in list {
            preds[b].push(a);
        }
    }
    let spread = |state: &mut Vec<State>, from: usize, value: State, next: &[Vec<usize>]| {
        let mut stack = vec![from];
        state[from] = value;
        while let Some(x) = stack.pop() {
            for &y in &next[x] {
                if state[y] == State::Open {
                    state[y] = value;
                    stack.push(y);
                }
            }
        }
    };
    let mut out = Vec::new();
    let mut pending = vec![vec![State::Open; k]];
    while let Some(mut state) = pending.pop() {
        match (first..k).find(|&a| state[a] == State::Open) {
            None => out.push((first..k).filter(|&a| state[a] == State::In).collect()),
            Some(a) => {
                let mut excluded = state.clone();
                spread(&mut excluded, a, State::Out, &preds);
                pending.push(excluded);
                spread(&mut state, a, State::In, arcs);
                pending.push(state);
            }
        }
    }
    out
}

/// Shuffles `items` with the builder's generator; used by tests to vary
/// vertex orders.
#[cfg(test)]
fn shuffled<T>(mut items: Vec<T>, seed: u64) -> Vec<T> {
    use rand::seq::SliceRandom;
    items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    items
}
