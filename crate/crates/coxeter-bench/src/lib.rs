//! Benchmark-only crate; see `benches/kernels.rs`. The library target
//! exists so Cargo has something to attach the bench target to.
