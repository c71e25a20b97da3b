//! Criterion benchmarks for the nestfock engine; see `benches/`.
