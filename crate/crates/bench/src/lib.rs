//! Benchmark-only crate; the measurements live in `benches/workbench.rs`
//! and run with `cargo bench -p hpi-bench`.
