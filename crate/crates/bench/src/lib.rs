//! Criterion benchmarks for the Kahan map; see `benches/`.
