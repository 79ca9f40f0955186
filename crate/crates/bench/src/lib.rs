//! Criterion benchmarks for the kernels of `schubert-core`; see `benches/`.
