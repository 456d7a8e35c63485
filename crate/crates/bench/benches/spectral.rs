use criterion::{criterion_group, criterion_main, Criterion};
use giantlab::graph::{cheeger_lower_bound, girth, random_regular};

fn spectral_and_girth(c: &mut Criterion) {
    let g = random_regular(10_000, 3, 2).unwrap();
    let mut group = c.benchmark_group("metrics");
    group.sample_size(10);
    group.bench_function("cheeger_lower_bound/1e4", |b| b.iter(|| cheeger_lower_bound(&g)));
    group.bench_function("girth/1e4", |b| b.iter(|| girth(&g)));
    group.finish();
}

criterion_group!(benches, spectral_and_girth);
criterion_main!(benches);
