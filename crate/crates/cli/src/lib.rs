//! Report types emitted by the `minperm` binary, reusable from tests.

pub mod report;
