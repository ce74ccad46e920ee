//! Fully dynamic minimum cut under edge insertions and deletions.
//!
//! The state keeps a cactus whose cuts all have weight `λ` in the current
//! graph, though it may miss some minimum cuts. Insertions contract the
//! cactus path between the endpoints; deletions are certified by an
//! early-terminating flow and rebuild only when `λ` drops. The cactus from
//! before the last drop is cached and reused when `λ` climbs back.

mod stream;

pub use stream::{load_stream, parse_stream, replay_stream, Batch, Event, Stream};

use std::collections::HashMap;

use log::{debug, warn};

use crate::cactus::{find_all_mincuts, AllCutsOptions, CactusGraph, RecursionOptions};
use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, FlowOptions};
use crate::graph::{MutableGraph, StaticGraph};
use crate::noi::{exact_mincut, ExactOptions};
use crate::{Weight, INFINITE_CUT};

#[derive(Debug, Clone, Copy)]
pub struct DynamicOptions {
    /// Keep the cactus from before the last drop of `λ`.
    pub cache: bool,
    /// Depth of the exact initial labeling in deletion flows.
    pub gamma: usize,
    /// A cached cactus is reused only while the insertions since the
    /// snapshot number fewer than `delta` times its node count.
    pub delta: f64,
    pub seed: u64,
}

impl Default for DynamicOptions {
    fn default() -> Self {
        DynamicOptions { cache: true, gamma: 1, delta: 2.0, seed: 0 }
    }
}

/// Snapshot of the cactus taken when `λ` dropped.
#[derive(Debug, Clone)]
pub struct CacheEntry {
    pub cactus: CactusGraph,
    pub lambda: Weight,
    /// Inserted edges beyond those that repaid a deletion.
    pub insertions_since: Vec<(usize, usize)>,
    /// Weight deleted since the snapshot and not inserted again, per pair.
    pub deleted_since: HashMap<(usize, usize), Weight>,
}

impl CacheEntry {
    fn record_insert(&mut self, u: usize, v: usize, w: Weight) {
        let key = (u.min(v), u.max(v));
        let mut rest = w;
        if let Some(debt) = self.deleted_since.get_mut(&key) {
            let paid = rest.min(*debt);
            *debt -= paid;
            rest -= paid;
            if *debt == 0 {
                self.deleted_since.remove(&key);
            }
        }
        if rest > 0 {
            self.insertions_since.push(key);
        }
    }

    fn record_delete(&mut self, u: usize, v: usize, w: Weight) {
        *self.deleted_since.entry((u.min(v), u.max(v))).or_insert(0) += w;
    }
}

/// Counters for the work done by updates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DynamicStats {
    pub insertions: u64,
    pub deletions: u64,
    /// Full cactus computations after the initial one.
    pub recomputations: u64,
    pub cache_restores: u64,
    /// Deletions settled by the flow reaching `λ`.
    pub certified_deletions: u64,
}

pub struct DynamicState {
    graph: MutableGraph,
    network: FlowNetwork,
    lambda: Weight,
    cactus: CactusGraph,
    pi: Vec<usize>,
    cache: Option<CacheEntry>,
    options: DynamicOptions,
    stats: DynamicStats,
}

impl DynamicState {
    pub fn new(g: &StaticGraph, options: DynamicOptions) -> Result<Self> {
        if g.n() == 0 {
            return Err(Error::usage("dynamic graph needs at least one vertex"));
        }
        let mut state = DynamicState {
            graph: MutableGraph::from_static(g),
            network: FlowNetwork::from_static(g),
            lambda: INFINITE_CUT,
            cactus: CactusGraph::single(g.n(), INFINITE_CUT),
            pi: vec![0; g.n()],
            cache: None,
            options,
            stats: DynamicStats::default(),
        };
        state.recompute()?;
        state.stats.recomputations = 0;
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn lambda(&self) -> Weight {
        self.lambda
    }

    pub fn cactus(&self) -> &CactusGraph {
        &self.cactus
    }

    pub fn cache(&self) -> Option<&CacheEntry> {
        self.cache.as_ref()
    }

    pub fn stats(&self) -> DynamicStats {
        self.stats
    }

    /// Current graph as a static copy.
    pub fn graph(&self) -> StaticGraph {
        self.graph.to_static().0
    }

    /// `λ` and, when some cut exists, a canonical side of weight `λ`.
    pub fn query(&self) -> (Weight, Option<Vec<bool>>) {
        let side = if self.lambda == 0 {
            let node = self.pi[0];
            Some((0..self.n()).map(|v| self.pi[v] != node).collect())
        } else {
            self.cactus.first_cut()
        };
        (self.lambda, side.map(|s| crate::oracle::canonical(&s)))
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::usage(format!("edge ({u}, {v}) has an endpoint outside 0..{n}")));
        }
        if u == v {
            return Err(Error::usage(format!("self-loop at vertex {u}")));
        }
        Ok(())
    }

    fn refresh_pi(&mut self) {
        self.pi = self.cactus.node_of();
    }

    fn recompute(&mut self) -> Result<()> {
        let g = self.graph();
        let options = AllCutsOptions {
            seed: self.options.seed,
            recursion: RecursionOptions { gamma: self.options.gamma, ..Default::default() },
            kernelize: true,
        };
        let (lambda, cactus) = find_all_mincuts(&g, &options)?;
        debug!("recomputed cactus: lambda {lambda}, {} nodes", cactus.n_star());
        self.lambda = lambda;
        self.cactus = cactus;
        self.refresh_pi();
        self.stats.recomputations += 1;
        Ok(())
    }

    /// Adds `w` to edge `{u, v}` and returns the new `λ`.
    pub fn insert_edge(&mut self, u: usize, v: usize, w: Weight) -> Result<Weight> {
        self.check_pair(u, v)?;
        if w == 0 {
            return Err(Error::usage(format!("edge ({u}, {v}) has zero weight")));
        }
        self.graph.add_edge(u, v, w)?;
        self.network.add_capacity(u, v, w);
        self.stats.insertions += 1;
        if let Some(cache) = self.cache.as_mut() {
            cache.record_insert(u, v, w);
        }
        let (pu, pv) = (self.pi[u], self.pi[v]);
        if pu == pv {
            return Ok(self.lambda);
        }
        if self.lambda == 0 {
            self.cactus.merge_nodes(pu, pv);
            self.refresh_pi();
            if self.cactus.nodes().len() == 1 {
                self.lambda_rises()?;
            }
            return Ok(self.lambda);
        }
        self.cactus
            .contract_path(pu, pv)
            .ok_or_else(|| Error::invariant(format!("no cactus path between nodes {pu} and {pv}")))?;
        self.cactus.normalize();
        self.cactus.validate()?;
        self.refresh_pi();
        if self.cactus.tree_edges().is_empty() && self.cactus.cycles().is_empty() {
            self.lambda_rises()?;
        }
        Ok(self.lambda)
    }

    /// Every represented cut is gone: reuse the cached cactus if it is still
    /// valid, otherwise recompute. The cache is dropped either way.
    fn lambda_rises(&mut self) -> Result<()> {
        if let Some(entry) = self.cache.take() {
            if self.restore_from_cache(entry)? {
                self.stats.cache_restores += 1;
                return Ok(());
            }
        }
        self.recompute()
    }

    /// Replays the recorded insertions on the snapshot. Succeeds when the
    /// result still has a cut, no remaining deletion crosses one of its
    /// cuts, and the current minimum cut equals the snapshot value.
    fn restore_from_cache(&mut self, entry: CacheEntry) -> Result<bool> {
        let nodes = entry.cactus.n_star().max(1) as f64;
        if entry.insertions_since.len() as f64 / nodes >= self.options.delta {
            debug!("cache skipped: {} insertions", entry.insertions_since.len());
            return Ok(false);
        }
        let mut cactus = entry.cactus;
        let mut pi = cactus.node_of();
        for &(u, v) in &entry.insertions_since {
            if pi[u] != pi[v] {
                cactus
                    .contract_path(pi[u], pi[v])
                    .ok_or_else(|| Error::invariant("cached cactus lost a path"))?;
                cactus.normalize();
                pi = cactus.node_of();
            }
        }
        if entry.deleted_since.keys().any(|&(u, v)| pi[u] != pi[v]) {
            return Ok(false);
        }
        if cactus.tree_edges().is_empty() && cactus.cycles().is_empty() {
            return Ok(false);
        }
        let g = self.graph();
        let current = exact_mincut(&g, &ExactOptions { seed: self.options.seed, ..Default::default() }).value;
        if current != entry.lambda {
            return Ok(false);
        }
        cactus.validate()?;
        self.lambda = entry.lambda;
        self.cactus = cactus;
        self.refresh_pi();
        Ok(true)
    }

    /// Removes edge `{u, v}` entirely and returns the new `λ`.
    pub fn delete_edge(&mut self, u: usize, v: usize) -> Result<Weight> {
        self.check_pair(u, v)?;
        let w = self
            .graph
            .remove_edge(u, v)
            .ok_or_else(|| Error::usage(format!("edge ({u}, {v}) is not present")))?;
        self.network.remove_edge(u, v);
        self.stats.deletions += 1;
        if let Some(cache) = self.cache.as_mut() {
            cache.record_delete(u, v, w);
        }
        let target = if self.lambda == 0 { 1 } else { self.lambda };
        let flow = self.network.max_flow(u, &[v], FlowOptions { target: Some(target), gamma: self.options.gamma })?;
        if flow.reached_target {
            self.stats.certified_deletions += 1;
            return Ok(self.lambda);
        }
        if self.lambda == 0 {
            self.split_component(u);
            return Ok(0);
        }
        let dropped = flow.value;
        if self.options.cache {
            let mut entry = CacheEntry {
                cactus: self.cactus.clone(),
                lambda: self.lambda,
                insertions_since: Vec::new(),
                deleted_since: HashMap::new(),
            };
            entry.record_delete(u, v, w);
            self.cache = Some(entry);
        }
        self.recompute()?;
        if self.lambda != dropped {
            return Err(Error::invariant(format!(
                "deletion flow found {dropped} but the recomputed minimum cut is {}",
                self.lambda
            )));
        }
        Ok(self.lambda)
    }

    /// The component holding `u` split off from its cactus node.
    fn split_component(&mut self, u: usize) {
        let (g, _) = self.graph.to_static();
        let mut seen = vec![false; g.n()];
        seen[u] = true;
        let mut stack = vec![u];
        let mut part = Vec::new();
        while let Some(x) = stack.pop() {
            part.push(x);
            for (y, _) in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        let x = self.pi[u];
        if part.len() == self.cactus.node(x).len() {
            warn!("component split found no vertices to move");
            return;
        }
        self.cactus.split_node(x, &part);
        self.refresh_pi();
    }
}
