//! Criterion benchmarks for the permanent kernel and distribution engines; see `benches/`.
