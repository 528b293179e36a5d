//! Benchmark-only crate; see `benches/observables.rs`.
