//! Library surface of the CLI: file formats, reports, solve and bench
//! machinery. The binary in `main.rs` is a thin argument-parsing layer over
//! these modules so integration tests can drive them directly.

pub mod bench;
pub mod format;
pub mod report;
pub mod run;
