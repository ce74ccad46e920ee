//! Push-relabel maximum s-T flow with lowest-label selection, local
//! relabeling, early termination and implicit per-problem reset.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::StaticGraph;
use crate::Weight;

#[derive(Debug, Clone, Copy)]
struct Arc {
    to: usize,
    cap: Weight,
    rev: usize,
    flow: i64,
    stamp: u64,
}

/// Options for a single flow problem.
#[derive(Debug, Clone, Copy)]
pub struct FlowOptions {
    /// Stop as soon as this much flow reaches the sinks.
    pub target: Option<Weight>,
    /// Depth of the exact backward BFS used for the initial labels.
    pub gamma: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions { target: None, gamma: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    /// Flow that reached the sinks.
    pub value: Weight,
    /// Whether the target was reached. Always false without a target.
    pub reached_target: bool,
    /// Source side of a minimum s-T cut. Only present after a full run.
    pub source_side: Option<Vec<bool>>,
}

/// Undirected network with capacity `c(e)` in both directions.
///
/// Flow values carry the id of the problem that wrote them; a stale id reads
/// as zero, so starting a new problem costs no pass over the edges.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    problem: u64,
    label: Vec<usize>,
    excess: Vec<i64>,
    is_sink: Vec<bool>,
    current: Vec<usize>,
    touched: usize,
    source: usize,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); n],
            problem: 1,
            label: vec![0; n],
            excess: vec![0; n],
            is_sink: vec![false; n],
            current: vec![0; n],
            touched: 0,
            source: 0,
        }
    }

    pub fn from_static(g: &StaticGraph) -> Self {
        let mut net = FlowNetwork::new(g.n());
        for (u, v, w) in g.edges() {
            net.push_edge(u, v, w);
        }
        net
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    fn push_edge(&mut self, u: usize, v: usize, w: Weight) {
        let iu = self.adj[u].len();
        let iv = self.adj[v].len();
        self.adj[u].push(Arc { to: v, cap: w, rev: iv, flow: 0, stamp: 0 });
        self.adj[v].push(Arc { to: u, cap: w, rev: iu, flow: 0, stamp: 0 });
    }

    /// Adds `w` to the capacity of `{u, v}`, creating the edge if needed.
    pub fn add_capacity(&mut self, u: usize, v: usize, w: Weight) {
        if let Some(i) = self.adj[u].iter().position(|a| a.to == v) {
            let rev = self.adj[u][i].rev;
            self.adj[u][i].cap += w;
            self.adj[v][rev].cap += w;
        } else {
            self.push_edge(u, v, w);
        }
    }

    /// Removes edge `{u, v}` and returns its capacity.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Option<Weight> {
        let i = self.adj[u].iter().position(|a| a.to == v)?;
        let arc = self.adj[u][i];
        self.swap_remove(v, arc.rev);
        let i = self.adj[u].iter().position(|a| a.to == v).expect("edge present");
        self.swap_remove(u, i);
        Some(arc.cap)
    }

    fn swap_remove(&mut self, v: usize, i: usize) {
        self.adj[v].swap_remove(i);
        if i < self.adj[v].len() {
            let moved = self.adj[v][i];
            self.adj[moved.to][moved.rev].rev = i;
        }
    }

    /// Starts a new problem; every flow value now reads as zero.
    pub fn reset_implicit(&mut self) -> u64 {
        if self.problem == u64::MAX {
            for arcs in &mut self.adj {
                for a in arcs {
                    a.stamp = 0;
                    a.flow = 0;
                }
            }
            self.problem = 0;
        }
        self.problem += 1;
        self.touched = 0;
        self.problem
    }

    pub fn problem_id(&self) -> u64 {
        self.problem
    }

    /// Arcs written during the current problem.
    pub fn touched_arcs(&self) -> usize {
        self.touched
    }

    fn arc_flow(&self, v: usize, i: usize) -> i64 {
        let a = &self.adj[v][i];
        if a.stamp == self.problem {
            a.flow
        } else {
            0
        }
    }

    /// Nonnegative flow on the `i`-th arc of `v`.
    pub fn flow(&self, v: usize, i: usize) -> Weight {
        self.arc_flow(v, i).max(0) as Weight
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn capacity(&self, v: usize, i: usize) -> Weight {
        self.adj[v][i].cap
    }

    fn residual(&self, v: usize, i: usize) -> Weight {
        (self.adj[v][i].cap as i64 - self.arc_flow(v, i)) as Weight
    }

    fn add_flow(&mut self, v: usize, i: usize, delta: i64) {
        let problem = self.problem;
        let (to, rev) = {
            let a = &self.adj[v][i];
            (a.to, a.rev)
        };
        for (x, j, d) in [(v, i, delta), (to, rev, -delta)] {
            let a = &mut self.adj[x][j];
            if a.stamp != problem {
                a.stamp = problem;
                a.flow = 0;
                self.touched += 1;
            }
            a.flow += d;
        }
    }

    pub fn label(&self, v: usize) -> usize {
        self.label[v]
    }

    pub fn excess(&self, v: usize) -> i64 {
        self.excess[v]
    }

    /// True when `d(u) <= d(v) + 1` holds for every residual arc `(u, v)`.
    pub fn labeling_is_valid(&self) -> bool {
        (0..self.n()).all(|u| {
            (0..self.adj[u].len()).all(|i| {
                self.residual(u, i) == 0 || self.label[u] <= self.label[self.adj[u][i].to] + 1
            })
        })
    }

    fn validate(&self, s: usize, sinks: &[usize]) -> Result<()> {
        let n = self.n();
        if s >= n || sinks.iter().any(|&t| t >= n) {
            return Err(Error::usage(format!("flow endpoints must lie in 0..{n}")));
        }
        if sinks.is_empty() {
            return Err(Error::usage("sink set is empty"));
        }
        if sinks.contains(&s) {
            return Err(Error::usage(format!("source {s} is also a sink")));
        }
        Ok(())
    }

    /// Starts a fresh problem: local relabeling around the sinks to depth
    /// `gamma`, then saturation of the source arcs. Returns the flow that
    /// reached the sinks during saturation.
    pub fn initialize(&mut self, s: usize, sinks: &[usize], gamma: usize) -> Result<Weight> {
        self.validate(s, sinks)?;
        self.reset_implicit();
        let n = self.n();
        let far = (gamma + 1).min(n);
        self.label.iter_mut().for_each(|d| *d = far);
        self.excess.iter_mut().for_each(|x| *x = 0);
        self.current.iter_mut().for_each(|c| *c = 0);
        self.is_sink.iter_mut().for_each(|t| *t = false);
        self.source = s;

        let mut queue = VecDeque::new();
        for &t in sinks {
            self.is_sink[t] = true;
            self.label[t] = 0;
            queue.push_back(t);
        }
        let mut seen = self.is_sink.clone();
        seen[s] = true;
        while let Some(x) = queue.pop_front() {
            if self.label[x] >= gamma {
                continue;
            }
            for a in &self.adj[x] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    self.label[a.to] = self.label[x] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.label[s] = n;

        let mut reached = 0;
        for i in 0..self.adj[s].len() {
            let (to, cap) = (self.adj[s][i].to, self.adj[s][i].cap);
            if cap == 0 {
                continue;
            }
            self.add_flow(s, i, cap as i64);
            self.excess[s] -= cap as i64;
            self.excess[to] += cap as i64;
            if self.is_sink[to] {
                reached += cap;
            }
        }
        Ok(reached)
    }

    /// Maximum flow from `s` to the sink set.
    ///
    /// With a target the run stops as soon as the sinks hold that much flow.
    /// Otherwise it runs to completion, returning excess to the source, and
    /// reports the minimum cut side reachable from `s` in the residual graph.
    pub fn max_flow(&mut self, s: usize, sinks: &[usize], options: FlowOptions) -> Result<FlowResult> {
        if options.target == Some(0) {
            self.validate(s, sinks)?;
            self.reset_implicit();
            return Ok(FlowResult { value: 0, reached_target: true, source_side: None });
        }
        let mut at_sinks = self.initialize(s, sinks, options.gamma)?;
        let hit = |v: Weight| options.target.is_some_and(|t| v >= t);
        if hit(at_sinks) {
            return Ok(FlowResult { value: at_sinks, reached_target: true, source_side: None });
        }

        let n = self.n();
        let top = 2 * n + 1;
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for v in 0..n {
            if v != s && !self.is_sink[v] && self.excess[v] > 0 {
                buckets[self.label[v].min(top)].push(v);
            }
        }
        let mut lowest = 0;
        loop {
            while lowest <= top && buckets[lowest].is_empty() {
                lowest += 1;
            }
            if lowest > top {
                break;
            }
            let v = buckets[lowest].pop().expect("bucket is nonempty");
            // Discharge until v is empty or relabeled.
            while self.excess[v] > 0 {
                if self.current[v] == self.adj[v].len() {
                    self.relabel(v);
                    self.current[v] = 0;
                    buckets[self.label[v].min(top)].push(v);
                    break;
                }
                let i = self.current[v];
                let to = self.adj[v][i].to;
                let res = self.residual(v, i);
                if res == 0 || self.label[v] != self.label[to] + 1 {
                    self.current[v] += 1;
                    continue;
                }
                let delta = (self.excess[v] as Weight).min(res);
                self.add_flow(v, i, delta as i64);
                self.excess[v] -= delta as i64;
                let was_idle = self.excess[to] <= 0;
                self.excess[to] += delta as i64;
                if self.is_sink[to] {
                    at_sinks += delta;
                    if hit(at_sinks) {
                        return Ok(FlowResult { value: at_sinks, reached_target: true, source_side: None });
                    }
                } else if to != s && was_idle {
                    let d = self.label[to].min(top);
                    buckets[d].push(to);
                    lowest = lowest.min(d);
                }
            }
        }
        let side = self.residual_reachable(s);
        Ok(FlowResult {
            value: at_sinks,
            reached_target: false,
            source_side: Some(side),
        })
    }

    fn relabel(&mut self, v: usize) {
        let mut best = usize::MAX;
        for i in 0..self.adj[v].len() {
            if self.residual(v, i) > 0 {
                best = best.min(self.label[self.adj[v][i].to]);
            }
        }
        self.label[v] = if best == usize::MAX { 2 * self.n() } else { best + 1 };
    }

    /// Vertices reachable from `s` through arcs with residual capacity.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for i in 0..self.adj[x].len() {
                let to = self.adj[x][i].to;
                if !seen[to] && self.residual(x, i) > 0 {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }

    /// Vertices that can reach some sink through residual arcs.
    pub fn residual_coreachable(&self, sinks: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut stack = Vec::new();
        for &t in sinks {
            seen[t] = true;
            stack.push(t);
        }
        while let Some(x) = stack.pop() {
            // Arc (y -> x) is residual when its partner stored at x allows it.
            for a in &self.adj[x] {
                let y = a.to;
                if !seen[y] && self.residual(y, a.rev) > 0 {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Residual successors of `v`.
    pub fn residual_successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj[v].len())
            .filter(move |&i| self.residual(v, i) > 0)
            .map(move |i| self.adj[v][i].to)
    }
}

/// Maximum flow from `s` to `sinks` on a fresh network built from `g`.
pub fn max_flow_st(g: &StaticGraph, s: usize, sinks: &[usize], options: FlowOptions) -> Result<FlowResult> {
    FlowNetwork::from_static(g).max_flow(s, sinks, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, Weight)]) -> StaticGraph {
        StaticGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = graph(2, &[(0, 1, 5)]);
        let r = max_flow_st(&g, 0, &[1], FlowOptions::default()).unwrap();
        assert_eq!(r.value, 5);
        assert!(!r.reached_target);
    }

    #[test]
    fn path_bottleneck_side() {
        let g = graph(3, &[(0, 1, 3), (1, 2, 2)]);
        let r = max_flow_st(&g, 0, &[2], FlowOptions::default()).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.source_side.unwrap(), vec![true, true, false]);
    }

    #[test]
    fn early_termination_on_cycle() {
        let g = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        let r = max_flow_st(&g, 0, &[2], FlowOptions { target: Some(2), gamma: 1 }).unwrap();
        assert!(r.reached_target);
        assert!(r.value >= 2);
    }

    #[test]
    fn zero_target_returns_at_once() {
        let g = graph(2, &[(0, 1, 5)]);
        let r = max_flow_st(&g, 0, &[1], FlowOptions { target: Some(0), gamma: 1 }).unwrap();
        assert_eq!((r.value, r.reached_target), (0, true));
    }

    #[test]
    fn rejects_source_in_sinks() {
        let g = graph(2, &[(0, 1, 5)]);
        assert!(max_flow_st(&g, 0, &[0], FlowOptions::default()).is_err());
        assert!(max_flow_st(&g, 0, &[], FlowOptions::default()).is_err());
    }

    #[test]
    fn reset_reads_zero_and_reuses_network() {
        let g = graph(4, &[(0, 1, 2), (1, 2, 3), (2, 3, 1), (0, 2, 4)]);
        let mut net = FlowNetwork::from_static(&g);
        let a = net.max_flow(0, &[3], FlowOptions::default()).unwrap();
        net.reset_implicit();
        for v in 0..4 {
            for i in 0..net.degree(v) {
                assert_eq!(net.flow(v, i), 0);
            }
        }
        let b = net.max_flow(0, &[3], FlowOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wraparound_forces_physical_reset() {
        let g = graph(3, &[(0, 1, 2), (1, 2, 3)]);
        let mut net = FlowNetwork::from_static(&g);
        net.problem = u64::MAX - 1;
        let a = net.max_flow(0, &[2], FlowOptions::default()).unwrap();
        let b = net.max_flow(0, &[2], FlowOptions::default()).unwrap();
        assert_eq!(net.problem_id(), 1);
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn tiny_problems_touch_few_arcs() {
        // Long path with s and t adjacent at one end.
        let n = 2000;
        let g = StaticGraph::from_edges(n, (0..n - 1).map(|i| (i, i + 1, 1))).unwrap();
        let mut net = FlowNetwork::from_static(&g);
        for round in 0..10_000 {
            let (s, t) = if round % 2 == 0 { (0, 1) } else { (1, 0) };
            let r = net.max_flow(s, &[t], FlowOptions { target: Some(1), gamma: 1 }).unwrap();
            assert!(r.reached_target);
            assert!(net.touched_arcs() < g.m());
        }
    }

    #[test]
    fn conservation_after_full_run() {
        let g = graph(5, &[(0, 1, 4), (1, 2, 2), (2, 4, 5), (0, 3, 3), (3, 4, 1), (1, 3, 2)]);
        let mut net = FlowNetwork::from_static(&g);
        let r = net.max_flow(0, &[4], FlowOptions::default()).unwrap();
        assert_eq!(r.value, 3);
        for v in 1..4 {
            assert_eq!(net.excess(v), 0);
        }
    }
}
