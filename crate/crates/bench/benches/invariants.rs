use criterion::{criterion_group, criterion_main, Criterion};
use gcmwb_bench::{example_ring, two_planes};
use gcmwb_core::config::EngineConfig;
use gcmwb_core::graded::regularity_g;
use gcmwb_core::harness::run_suite;
use gcmwb_core::invariants::invariant_ia;
use gcmwb_core::rees::rees_presentation;

fn example_family(c: &mut Criterion) {
    let cfg = EngineConfig::default();
    let (a, q) = example_ring(6);
    c.bench_function("I(A) trace, r = 6", |b| b.iter(|| invariant_ia(&a, &q, 8, &cfg).unwrap()));
    c.bench_function("regularity, r = 6", |b| b.iter(|| regularity_g(&a, &q, Some(6), &cfg).unwrap()));
    c.bench_function("rees presentation, r = 6", |b| b.iter(|| rees_presentation(&a, &q).unwrap()));
    c.bench_function("suite, r = 3", |b| {
        let (a, q) = example_ring(3);
        b.iter(|| run_suite(&a, std::slice::from_ref(&q), (5, 2), &cfg).unwrap())
    });
}

fn buchsbaum(c: &mut Criterion) {
    let cfg = EngineConfig::default();
    let (a, q) = two_planes();
    let mut g = c.benchmark_group("two planes");
    g.sample_size(10);
    g.bench_function("regularity", |b| b.iter(|| regularity_g(&a, &q, Some(1), &cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, example_family, buchsbaum);
criterion_main!(benches);
