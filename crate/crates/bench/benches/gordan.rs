use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use satseq_core::gordan::{delta, threshold_search};

fn deltas(c: &mut Criterion) {
    c.bench_function("delta d=20 s=3 t=6", |b| b.iter(|| delta(black_box(20), 3, 6).unwrap()));
    let mut g = c.benchmark_group("threshold");
    g.sample_size(10);
    g.bench_function("s=4 d_max=30", |b| b.iter(|| threshold_search(black_box(4), 30).unwrap()));
    g.finish();
}

criterion_group!(benches, deltas);
criterion_main!(benches);
