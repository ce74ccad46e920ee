//! End-to-end acceptance suite. Runs every criterion, prints one PASS/FAIL
//! line each, and exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mincut_core::cactus::AllCutsOptions;
use mincut_core::dynamic::{replay_stream, Event};
use mincut_core::generators::{gen_clustered_er, random_connected, random_update_stream};
use mincut_core::noi::capforest;
use mincut_core::oracle::{min_st_cut, oracle_mincut, pairwise_connectivity, stoer_wagner};
use mincut_core::{
    exact_mincut, find_all_mincuts, most_balanced_cut, viecut, CactusGraph, DynamicOptions, DynamicState,
    ExactOptions, FlowNetwork, FlowOptions, QueueKind, StaticGraph, VieCutOptions, Weight, INFINITE_CUT,
};

use common::{cycle, small_graph, smaller_side, sorted};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const QUEUES: [QueueKind; 3] = [QueueKind::BucketStack, QueueKind::BucketQueue, QueueKind::Heap];

fn exact(g: &StaticGraph) -> Weight {
    exact_mincut(g, &ExactOptions::default()).value
}

fn exact_matches_oracle() -> Outcome {
    for i in 0..500 {
        let g = small_graph(i, 10, 10);
        let expected = oracle_mincut(&g).unwrap().lambda;
        let cut = exact_mincut(&g, &ExactOptions { seed: i, ..Default::default() });
        ensure!(cut.value == expected, "graph {i}: exact {} oracle {expected}", cut.value);
        ensure!(g.cut_weight(&cut.side) == cut.value, "graph {i}: side does not have weight {}", cut.value);
    }
    Ok("500 graphs".into())
}

fn allcuts_instances() -> Vec<StaticGraph> {
    let mut graphs: Vec<StaticGraph> = (3..=9).map(cycle).collect();
    // Small weights make many minimum cuts.
    graphs.extend((0..300).map(|i| small_graph(1_000 + i, 9, if i % 2 == 0 { 1 } else { 3 })));
    graphs
}

fn allcuts_match_oracle() -> Outcome {
    let mut cuts = 0;
    for (i, g) in allcuts_instances().iter().enumerate() {
        let expected = oracle_mincut(g).unwrap();
        let (lambda, cactus) = find_all_mincuts(g, &AllCutsOptions { seed: i as u64, ..Default::default() })
            .map_err(|e| format!("graph {i}: {e}"))?;
        ensure!(lambda == expected.lambda, "graph {i}: lambda {lambda} oracle {}", expected.lambda);
        let found = cactus.canonical_cuts();
        ensure!(found == sorted(expected.sides.clone()), "graph {i}: cactus represents {} cuts, oracle {}", found.len(), expected.sides.len());
        cuts += found.len();
    }
    for n in 3..=9 {
        let (_, c) = find_all_mincuts(&cycle(n), &AllCutsOptions::default()).unwrap();
        ensure!(c.cycles().len() == 1 && c.n_star() == n, "C{n} is not a single cycle of {n} nodes");
    }
    Ok(format!("307 graphs including C3..C9, {cuts} cuts"))
}

fn balanced_matches_enumeration() -> Outcome {
    for (i, g) in allcuts_instances().iter().enumerate() {
        let (lambda, cactus) = find_all_mincuts(g, &AllCutsOptions::default()).map_err(|e| e.to_string())?;
        let best = cactus.enumerate_cuts().iter().map(|s| smaller_side(s)).max();
        let got = most_balanced_cut(&cactus);
        match (best, got) {
            (None, None) => {}
            (Some(b), Some(cut)) => {
                ensure!(cut.smaller as usize == b, "graph {i}: balanced {} enumerated {b}", cut.smaller);
                ensure!(smaller_side(&cut.side) == b, "graph {i}: side size disagrees with reported balance");
                ensure!(g.cut_weight(&cut.side) == lambda, "graph {i}: balanced side is not a minimum cut");
            }
            (b, g) => return Err(format!("graph {i}: enumeration {b:?} vs sweep {:?}", g.map(|c| c.smaller))),
        }
    }
    let r = 10_000;
    let nodes: Vec<Vec<usize>> = (0..r).map(|v| vec![v]).collect();
    let big = CactusGraph::from_parts(nodes, vec![], vec![(0..r).collect()], 2, r).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let cut = most_balanced_cut(&big).ok_or("no cut on the cycle")?;
    let elapsed = start.elapsed();
    ensure!(cut.smaller == 5_000, "cycle sweep found {}", cut.smaller);
    ensure!(elapsed < Duration::from_secs(1), "cycle sweep took {elapsed:?}");
    Ok(format!("307 graphs, 10^4-cycle sweep in {} ms", elapsed.as_millis()))
}

/// The default configuration and one that forces contraction all the way
/// down instead of handing small graphs to the exact solver.
fn heuristic_configs(seed: u64) -> [VieCutOptions; 2] {
    let default = VieCutOptions { seed, ..Default::default() };
    [default, VieCutOptions { n0: 2, ..default }]
}

fn viecut_bounds_and_clustered() -> Outcome {
    for i in 0..500 {
        let g = small_graph(i, 10, 10);
        let lambda = oracle_mincut(&g).unwrap().lambda;
        for options in heuristic_configs(i) {
            let r = viecut(&g, &options);
            ensure!(r.value >= lambda, "graph {i} n0={}: viecut {} below lambda {lambda}", options.n0, r.value);
            if r.value != INFINITE_CUT {
                ensure!(g.cut_weight(&r.side) == r.value, "graph {i}: viecut side has the wrong weight");
            }
        }
    }
    for i in 0..50u64 {
        let clusters = 2 + (i % 7) as usize;
        let g = gen_clustered_er(200, 10, clusters, i).map_err(|e| e.to_string())?;
        let reference = exact(&g);
        for options in heuristic_configs(i) {
            let heuristic = viecut(&g, &options).value;
            ensure!(
                heuristic == reference,
                "clustered graph {i} (k={clusters}, n0={}): viecut {heuristic} exact {reference}",
                options.n0
            );
        }
    }
    Ok("500 bounds, 50/50 clustered graphs exact, with default n0 and n0=2".into())
}

/// Minimum cut after every update, by exhaustive search on the edge map.
fn reference_trace(n: usize, events: &[Event]) -> Vec<Weight> {
    let mut weights: BTreeMap<(usize, usize), Weight> = BTreeMap::new();
    events
        .iter()
        .map(|&e| {
            match e {
                Event::Insert { u, v, w } => *weights.entry((u.min(v), u.max(v))).or_default() += w,
                Event::Delete { u, v } => {
                    weights.remove(&(u.min(v), u.max(v)));
                }
            }
            let g = StaticGraph::from_edges(n, weights.iter().map(|(&(u, v), &w)| (u, v, w))).unwrap();
            oracle_mincut(&g).unwrap().lambda
        })
        .collect()
}

fn dynamic_matches_oracle() -> Outcome {
    let mut restores = 0;
    for i in 0..20u64 {
        let n = 4 + (i % 7) as usize;
        let stream = random_update_stream(n, 1_000, 5, 40, i);
        let events: Vec<Event> = stream.batches.iter().flat_map(|b| b.events.iter().copied()).collect();
        let expected = reference_trace(n, &events);
        for cache in [true, false] {
            for gamma in 0..=2 {
                let options = DynamicOptions { cache, gamma, seed: i, ..Default::default() };
                let mut state = DynamicState::new(&StaticGraph::empty(n), options).map_err(|e| e.to_string())?;
                let trace = replay_stream(&mut state, &stream, false).map_err(|e| format!("stream {i}: {e}"))?;
                let got: Vec<Weight> = trace.iter().map(|&(_, l)| l).collect();
                if let Some(k) = (0..got.len()).find(|&k| got[k] != expected[k]) {
                    return Err(format!(
                        "stream {i} cache={cache} gamma={gamma}: update {k} gives {} oracle {}",
                        got[k], expected[k]
                    ));
                }
                restores += state.stats().cache_restores;
            }
        }
    }
    Ok(format!("20 streams x 1000 updates x 6 configurations, {restores} cache restores"))
}

fn flow_matches_oracle() -> Outcome {
    let mut early = 0;
    for i in 0..200u64 {
        let g = small_graph(2_000 + i, 10, 10);
        let n = g.n();
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        let s = rng.gen_range(0..n);
        let mut sinks: Vec<usize> = (0..n).filter(|&v| v != s && rng.gen_bool(0.3)).collect();
        if sinks.is_empty() {
            sinks.push((s + 1) % n);
        }
        let expected = min_st_cut(&g, s, &sinks).unwrap();
        let mut net = FlowNetwork::from_static(&g);
        for gamma in 0..=n {
            net.initialize(s, &sinks, gamma).unwrap();
            ensure!(net.labeling_is_valid(), "instance {i}: initial labeling invalid at gamma {gamma}");
            let r = net.max_flow(s, &sinks, FlowOptions { target: None, gamma }).unwrap();
            ensure!(r.value == expected, "instance {i} gamma {gamma}: flow {} oracle {expected}", r.value);
            let side = r.source_side.ok_or("full run without a cut side")?;
            ensure!(side[s] && sinks.iter().all(|&t| !side[t]), "instance {i}: side does not separate");
            ensure!(g.cut_weight(&side) == expected, "instance {i}: side weight differs from flow");
        }
        let target = rng.gen_range(1..=2 * expected.max(1));
        let r = net.max_flow(s, &sinks, FlowOptions { target: Some(target), gamma: 1 }).unwrap();
        ensure!(r.reached_target == (expected >= target), "instance {i}: target {target} vs min cut {expected}");
        if r.reached_target {
            ensure!(r.value >= target && r.value <= expected, "instance {i}: early value {} out of range", r.value);
            early += 1;
        } else {
            ensure!(r.value == expected, "instance {i}: unreached target but flow {}", r.value);
        }
    }
    Ok(format!("200 instances, {early} early terminations"))
}

fn exact_invariant_across_configurations() -> Outcome {
    for i in 0..100u64 {
        let n = 10 + (i as usize * 7) % 111;
        let g = if i % 4 == 3 {
            gen_clustered_er(n, 15, 3, i).map_err(|e| e.to_string())?
        } else {
            random_connected(n, n * (1 + i as usize % 5), 10, i)
        };
        let reference = stoer_wagner(&g);
        for queue in QUEUES {
            for workers in [1, 2, 4] {
                let cut = exact_mincut(&g, &ExactOptions { queue: Some(queue), workers, seed: i, ..Default::default() });
                ensure!(cut.value == reference, "graph {i} {queue:?} x{workers}: {} vs {reference}", cut.value);
                ensure!(g.cut_weight(&cut.side) == cut.value, "graph {i} {queue:?} x{workers}: bad side");
            }
        }
    }
    Ok("100 graphs x 9 configurations".into())
}

fn capforest_marks_are_sound() -> Outcome {
    let mut marked = 0;
    for i in 0..200u64 {
        let g = small_graph(3_000 + i, 8, 10);
        let n = g.n();
        let pairwise = pairwise_connectivity(&g).unwrap();
        let lambda = oracle_mincut(&g).unwrap().lambda;
        let max_degree = (0..n).map(|v| g.weighted_degree(v)).max().unwrap_or(0);
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        let bounds = [lambda.max(1), rng.gen_range(1..=max_degree.max(1)), max_degree.max(1)];
        for lambda_hat in bounds {
            for queue in QUEUES {
                for strict in [false, true] {
                    let mut run = capforest(&g, lambda_hat, queue, rng.gen_range(0..n), strict);
                    marked += run.marked_edges;
                    // A scanned prefix lighter than the input lowers the bound
                    // the marks are certified against.
                    let bound = run.updated_lambda_hat;
                    ensure!(bound <= lambda_hat && bound >= lambda.min(lambda_hat), "graph {i}: returned bound {bound} not in [min(lambda, input), input]");
                    if let Some(prefix) = &run.improved_side {
                        let mut side = vec![false; n];
                        prefix.iter().for_each(|&v| side[v] = true);
                        ensure!(g.cut_weight(&side) == bound, "graph {i}: improving prefix is not a cut of weight {bound}");
                    }
                    for u in 0..n {
                        for v in u + 1..n {
                            if run.marks.same(u, v) {
                                let floor = if strict { bound + 1 } else { bound };
                                ensure!(
                                    pairwise[u][v] >= floor,
                                    "graph {i}: {u},{v} merged at bound {bound} (strict {strict}) but connectivity {}",
                                    pairwise[u][v]
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("200 graphs, {marked} marked edges checked"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 8] = [
        ("exact minimum cut equals the oracle", exact_matches_oracle, Duration::from_secs(60)),
        ("cactus represents exactly the minimum cuts", allcuts_match_oracle, Duration::from_secs(300)),
        ("most balanced cut equals enumeration", balanced_matches_enumeration, Duration::from_secs(300)),
        ("heuristic bounds and clustered exactness", viecut_bounds_and_clustered, Duration::from_secs(120)),
        ("dynamic trace equals the oracle", dynamic_matches_oracle, Duration::from_secs(300)),
        ("flow equals the oracle s-T cut", flow_matches_oracle, Duration::from_secs(300)),
        ("exact value invariant across queues and workers", exact_invariant_across_configurations, Duration::from_secs(300)),
        ("certificate marks respect pairwise connectivity", capforest_marks_are_sound, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({} ms)", k + 1, elapsed.as_millis()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({} ms)", k + 1, elapsed.as_millis());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

