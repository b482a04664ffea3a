//! Criterion benchmarks for skewring; see `benches/`.
