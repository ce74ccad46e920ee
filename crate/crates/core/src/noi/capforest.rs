//! CAPFOREST connectivity certificates, sequential and parallel.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::StaticGraph;
use crate::noi::pq::{BoundedPQ, QueueKind};
use crate::union_find::{ConcurrentUnionFind, UnionFind};
use crate::Weight;

/// Outcome of one certificate pass.
#[derive(Debug, Clone)]
pub struct CapforestRun {
    /// Lower bound `q(e)` on the connectivity of each edge, stored on the
    /// half-edge leaving the endpoint scanned first. Zero where unset.
    pub q_values: Vec<Weight>,
    /// Blocks of edges certified contractible.
    pub marks: UnionFind,
    /// Number of marked edges.
    pub marked_edges: usize,
    /// Input bound, lowered when a scanned prefix gave a smaller cut.
    pub updated_lambda_hat: Weight,
    /// Vertices of the scanned prefix achieving `updated_lambda_hat`, when
    /// it improved on the input bound.
    pub improved_side: Option<Vec<usize>>,
}

struct Region {
    best: Weight,
    side: Option<Vec<usize>>,
}

/// Grows one scan region from `start`.
///
/// `claim(x)` decides whether this scanner may scan `x`; refused vertices are
/// blacklisted. Edges to blacklisted vertices are neither marked nor used to
/// raise priorities.
fn grow_region<C, M>(
    g: &StaticGraph,
    lambda_hat: Weight,
    strict: bool,
    kind: QueueKind,
    start: usize,
    mut claim: C,
    mut mark: M,
    q: &mut [Weight],
) -> Region
where
    C: FnMut(usize) -> bool,
    M: FnMut(usize, usize),
{
    let n = g.n();
    let cap = if strict { lambda_hat.saturating_add(1) } else { lambda_hat };
    let mut pq = BoundedPQ::new(n, cap, kind);
    let mut r = vec![0 as Weight; n];
    let mut scanned = vec![false; n];
    let mut blacklisted = vec![false; n];
    let mut order = Vec::new();
    let mut best = lambda_hat;
    let mut best_prefix = 0;
    let mut alpha: i64 = 0;

    pq.push(start, 0);
    while let Some((x, _)) = pq.pop_max() {
        if !claim(x) {
            blacklisted[x] = true;
            continue;
        }
        scanned[x] = true;
        order.push(x);
        alpha += g.weighted_degree(x) as i64 - 2 * r[x] as i64;
        if order.len() < n && (alpha as Weight) < best {
            best = alpha as Weight;
            best_prefix = order.len();
        }
        let threshold = if strict { best.saturating_add(1) } else { best };
        for e in g.edge_range(x) {
            let y = g.target(e);
            if scanned[y] || blacklisted[y] {
                continue;
            }
            let w = g.weight(e);
            if r[y] < threshold && threshold <= r[y] + w {
                mark(x, y);
            }
            r[y] += w;
            q[e] = r[y];
            pq.push(y, r[y]);
        }
    }
    Region {
        best,
        side: (best_prefix > 0).then(|| order[..best_prefix].to_vec()),
    }
}

/// Sequential certificate pass from `start`.
///
/// With `strict = false` an edge is marked when the scan pushes its
/// endpoint's priority across `λ̂`, certifying `λ(e) ≥ λ̂`. With
/// `strict = true` the threshold is `λ̂ + 1`, certifying `λ(e) > λ̂`.
pub fn capforest(g: &StaticGraph, lambda_hat: Weight, kind: QueueKind, start: usize, strict: bool) -> CapforestRun {
    let mut marks = UnionFind::new(g.n());
    let mut q = vec![0; g.half_edges()];
    if g.n() == 0 {
        return CapforestRun {
            q_values: q,
            marks,
            marked_edges: 0,
            updated_lambda_hat: lambda_hat,
            improved_side: None,
        };
    }
    let mut marked = 0;
    let region = grow_region(
        g,
        lambda_hat,
        strict,
        kind,
        start,
        |_| true,
        |x, y| {
            marked += 1;
            marks.union(x, y);
        },
        &mut q,
    );
    CapforestRun {
        q_values: q,
        marks,
        marked_edges: marked,
        updated_lambda_hat: region.best,
        improved_side: region.side,
    }
}

/// Start vertex of worker `worker` under `seed`.
pub fn start_vertex(seed: u64, worker: usize, n: usize) -> usize {
    worker_rng(seed, worker).gen_range(0..n)
}

fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Parallel certificate pass: every worker grows a region from a random
/// start, sharing a visited array so that each vertex is scanned once.
/// Workers blacklist vertices already taken by others.
pub fn capforest_parallel(
    g: &StaticGraph,
    lambda_hat: Weight,
    workers: usize,
    seed: u64,
    kind: QueueKind,
) -> CapforestRun {
    let n = g.n();
    let workers = workers.max(1);
    let half_edges = g.half_edges();
    if n == 0 {
        return capforest(g, lambda_hat, kind, 0, false);
    }
    if workers == 1 {
        return capforest(g, lambda_hat, kind, start_vertex(seed, 0, n), false);
    }

    let visited: Vec<AtomicBool> = (0..n).map(|_| AtomicBool::new(false)).collect();
    let shared = ConcurrentUnionFind::new(n);
    let marked = AtomicUsize::new(0);
    let results: Vec<(Region, Vec<Weight>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let (visited, shared, marked) = (&visited, &shared, &marked);
                scope.spawn(move || {
                    let mut q = vec![0; half_edges];
                    let mut rng = worker_rng(seed, w);
                    let start = (0..16)
                        .map(|_| rng.gen_range(0..n))
                        .find(|&v| !visited[v].load(Ordering::Relaxed));
                    let Some(start) = start else {
                        return (Region { best: lambda_hat, side: None }, q);
                    };
                    let region = grow_region(
                        g,
                        lambda_hat,
                        false,
                        kind,
                        start,
                        |x| !visited[x].swap(true, Ordering::AcqRel),
                        |x, y| {
                            marked.fetch_add(1, Ordering::Relaxed);
                            shared.union(x, y);
                        },
                        &mut q,
                    );
                    (region, q)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut q = vec![0; half_edges];
    let mut best = lambda_hat;
    let mut side = None;
    for (region, local) in results {
        for (slot, v) in q.iter_mut().zip(local) {
            *slot = (*slot).max(v);
        }
        if region.best < best {
            best = region.best;
            side = region.side;
        }
    }
    CapforestRun {
        q_values: q,
        marks: shared.to_union_find(),
        marked_edges: marked.into_inner(),
        updated_lambda_hat: best,
        improved_side: side,
    }
}
