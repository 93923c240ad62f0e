use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use numrange_core::nr::{numerical_radius_sample_oracle, numerical_radius_sample_oracle_seq};
use numrange_core::sampling::{sample_class, EnsembleClass};

fn bench_oracle(c: &mut Criterion) {
    let a = sample_class(EnsembleClass::Ginibre, 8, 7, 0);
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_with_input(BenchmarkId::new("radius", "parallel"), &(), |b, _| {
        b.iter(|| numerical_radius_sample_oracle(&a, 50_000, 3))
    });
    group.bench_with_input(BenchmarkId::new("radius", "sequential"), &(), |b, _| {
        b.iter(|| numerical_radius_sample_oracle_seq(&a, 50_000, 3))
    });
    group.finish();
}

criterion_group!(benches, bench_oracle);
criterion_main!(benches);
