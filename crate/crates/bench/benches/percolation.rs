use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use giantlab::percolation::{analyze, giant_path_counts, local_predictors};
use giantlab::{monte_carlo, sample, McOptions};
use giantlab_bench::cubic_sample;

fn sampling_and_analysis(c: &mut Criterion) {
    let (g, mask) = cubic_sample(100_000);
    c.bench_function("sample/1e5", |b| b.iter(|| sample(&g, 0.75, 3).unwrap()));
    c.bench_function("analyze/1e5", |b| b.iter(|| analyze(&g, &mask)));
    c.bench_function("giant_path_counts/1e5", |b| b.iter(|| giant_path_counts(&g, &mask)));
}

fn predictors(c: &mut Criterion) {
    let (g, mask) = cubic_sample(100_000);
    let mut group = c.benchmark_group("local_predictors");
    group.sample_size(10);
    for r in [10usize, 50] {
        group.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| {
            b.iter(|| local_predictors(&g, &mask, r).unwrap())
        });
    }
    group.finish();
}

fn trials(c: &mut Criterion) {
    let (g, _) = cubic_sample(100_000);
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(10);
    let opts = McOptions { threads: Some(1), ..McOptions::default() };
    group.bench_function("4 trials/1e5/1 thread", |b| b.iter(|| monte_carlo(&g, 0.75, 4, 1, &opts).unwrap()));
    group.finish();
}

criterion_group!(benches, sampling_and_analysis, predictors, trials);
criterion_main!(benches);
