//! Criterion benchmarks for satseq-core live under `benches/`.
