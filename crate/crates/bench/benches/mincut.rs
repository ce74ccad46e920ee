use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use mincut_bench::clustered;
use mincut_core::generators::random_connected;
use mincut_core::{exact_mincut, viecut, ExactOptions, QueueKind, VieCutOptions};

fn exact_queues(c: &mut Criterion) {
    let g = clustered(1_000, 4, 1);
    let mut group = c.benchmark_group("exact/queue");
    group.sample_size(10);
    for (name, queue) in [("stack", QueueKind::BucketStack), ("queue", QueueKind::BucketQueue), ("heap", QueueKind::Heap)] {
        group.bench_function(name, |b| {
            b.iter(|| exact_mincut(black_box(&g), &ExactOptions { queue: Some(queue), ..Default::default() }).value)
        });
    }
    group.finish();
}

fn exact_workers(c: &mut Criterion) {
    let g = random_connected(2_000, 20_000, 50, 7);
    let mut group = c.benchmark_group("exact/workers");
    group.sample_size(10);
    for workers in [1, 2, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, &workers| {
            b.iter(|| exact_mincut(&g, &ExactOptions { workers, ..Default::default() }).value)
        });
    }
    group.finish();
}

fn heuristic(c: &mut Criterion) {
    let mut group = c.benchmark_group("viecut");
    group.sample_size(10);
    for n in [1_000, 4_000] {
        let g = clustered(n, 8, 3);
        group.bench_with_input(BenchmarkId::new("clustered", n), &g, |b, g| {
            b.iter(|| viecut(g, &VieCutOptions { n0: 200, ..Default::default() }).value)
        });
    }
    group.finish();
}

criterion_group!(benches, exact_queues, exact_workers, heuristic);
criterion_main!(benches);
