//! Benchmark-only crate; see `benches/main.rs`. Keeping the benchmarks out
//! of the core crate avoids pulling criterion into its dev-dependency graph.
