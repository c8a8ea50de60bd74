//! Stub library so the benchmark targets have a crate to live in; the
//! benches exercise the `minperm` library directly.
