use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mincut_core::dynamic::replay_stream;
use mincut_core::generators::random_update_stream;
use mincut_core::{DynamicOptions, DynamicState, StaticGraph};

fn replay(c: &mut Criterion) {
    let mut group = c.benchmark_group("dynamic");
    group.sample_size(10);
    for delete_pct in [10, 40] {
        let stream = random_update_stream(60, 2_000, 10, delete_pct, 5);
        for cache in [true, false] {
            let id = BenchmarkId::new(format!("delete{delete_pct}"), if cache { "cache" } else { "nocache" });
            group.bench_function(id, |b| {
                b.iter(|| {
                    let options = DynamicOptions { cache, ..Default::default() };
                    let mut state = DynamicState::new(&StaticGraph::empty(stream.n), options).unwrap();
                    replay_stream(&mut state, &stream, false).unwrap().len()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, replay);
criterion_main!(benches);
