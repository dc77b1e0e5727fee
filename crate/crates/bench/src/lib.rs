//! Criterion benchmarks for the scholarnet pipeline; see `benches/pipeline.rs`.
