//! Criterion benchmarks for `ldiag`; see `benches/algebra.rs`.
