//! Criterion benchmarks for the query paths; see `benches/queries.rs`.
