//! Benchmarks for the theta-core hot paths live under `benches/`.
