use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use genocchi_core::special::{bernoulli_by_recurrence, bernoulli_by_series};
use genocchi_core::{gen_genocchi_numbers, BernoulliTable, TheoremId, Verifier};

fn bernoulli(c: &mut Criterion) {
    let mut group = c.benchmark_group("bernoulli");
    group.sample_size(10);
    for n in [64usize, 200] {
        group.bench_with_input(BenchmarkId::new("series", n), &n, |b, &n| {
            b.iter(|| bernoulli_by_series(n))
        });
        group.bench_with_input(BenchmarkId::new("recurrence", n), &n, |b, &n| {
            b.iter(|| bernoulli_by_recurrence(n))
        });
    }
    group.finish();
}

fn genocchi(c: &mut Criterion) {
    let mut group = c.benchmark_group("gen_genocchi");
    group.sample_size(10);
    for a in [2u64, 7, 20] {
        group.bench_with_input(BenchmarkId::new("series_order_200", a), &a, |b, &a| {
            b.iter(|| gen_genocchi_numbers(200, a).unwrap())
        });
    }
    group.finish();
}

fn grid(c: &mut Criterion) {
    let table = BernoulliTable::compute(100);
    let verifier = Verifier::with_bernoulli(100, 12, &table).unwrap();
    let mut group = c.benchmark_group("grid");
    group.sample_size(10);
    for id in [TheoremId::Theorem1, TheoremId::Theorem2, TheoremId::Prop2Equiv] {
        group.bench_function(id.as_str(), |b| {
            b.iter(|| verifier.run_grid(id, 1..=100, 2..=12).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bernoulli, genocchi, grid);
criterion_main!(benches);
