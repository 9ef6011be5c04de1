use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use satseq_core::laurent::birkhoff_factorize;
use satseq_core::splitting::{splitting_type, transition_matrix};

fn birkhoff(c: &mut Criterion) {
    let q = transition_matrix(7).unwrap();
    c.bench_function("birkhoff d=7", |b| b.iter(|| birkhoff_factorize(black_box(&q)).unwrap()));
}

fn full(c: &mut Criterion) {
    let mut g = c.benchmark_group("splitting_type");
    g.sample_size(10);
    g.bench_function("d=5", |b| b.iter(|| splitting_type(black_box(5)).unwrap()));
    g.finish();
}

criterion_group!(benches, birkhoff, full);
criterion_main!(benches);
