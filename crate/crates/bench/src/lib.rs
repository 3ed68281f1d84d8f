//! Criterion benchmarks for the simulator, encoders and optimizers live
//! under `benches/`; run them with `cargo bench -p hminus-bench`.
