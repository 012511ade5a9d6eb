//! Criterion benchmarks for `qsep`. See `benches/`.
