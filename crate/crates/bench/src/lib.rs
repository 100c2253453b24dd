//! Criterion benchmarks for the zenolab kernels live under `benches/`.
