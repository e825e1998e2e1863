//! Benchmarks for the jscc pipeline live in `benches/`.
