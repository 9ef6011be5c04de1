use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use satseq_core::transvectant::generic_form;
use satseq_core::transvect;

fn hessians(c: &mut Criterion) {
    let mut g = c.benchmark_group("self_transvectant");
    for d in [6usize, 8, 10] {
        let f = generic_form(d);
        g.bench_with_input(BenchmarkId::new("(F,F)_2", d), &f, |b, f| {
            b.iter(|| transvect(black_box(f), black_box(f), 2).unwrap())
        });
    }
    g.finish();
}

fn cubic(c: &mut Criterion) {
    let f = generic_form(7);
    let h4 = transvect(&f, &f, 4).unwrap();
    c.bench_function("((F,F)_4,F)_3 d=7", |b| b.iter(|| transvect(black_box(&h4), &f, 3).unwrap()));
}

criterion_group!(benches, hessians, cubic);
criterion_main!(benches);
