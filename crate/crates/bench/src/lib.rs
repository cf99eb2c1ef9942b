//! Benchmark-only crate; the benchmarks live in `benches/pipeline.rs` and
//! exercise `eqcm-core` through its public API.
