//! Benchmarks (`benches/`) and the acceptance suite (`tests/acceptance.rs`)
//! for `overlapfree`. The crate itself exports nothing.
