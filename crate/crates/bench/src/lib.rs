//! Criterion benchmarks for `pairsim-core`; see `benches/engine.rs`.
