//! Criterion benchmarks for the softprob crate; see `benches/`.
