//! Criterion benchmarks for the simulation engine live in `benches/`;
//! this crate has no library code of its own.
