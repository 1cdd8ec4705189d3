//! Benchmark-only crate; see `benches/profiles.rs`.
