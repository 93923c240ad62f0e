use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use numrange_core::sampling::EnsembleClass;
use numrange_core::{run_batch, BatchConfig};

fn bench_batch(c: &mut Criterion) {
    let cfg = BatchConfig {
        chains: vec![
            "CH-EQV".into(),
            "CH-KIT05".into(),
            "CH-KIT03".into(),
            "CH-OM".into(),
            "CH-T2.1".into(),
        ],
        classes: vec![EnsembleClass::Ginibre],
        ns: vec![4],
        count: 16,
        ..BatchConfig::default()
    };
    let mut group = c.benchmark_group("batch");
    group.sample_size(10);
    for (label, parallel) in [("parallel", true), ("sequential", false)] {
        group.bench_with_input(BenchmarkId::new("run_batch", label), &parallel, |b, &p| {
            b.iter(|| run_batch(&cfg, p).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_batch);
criterion_main!(benches);
