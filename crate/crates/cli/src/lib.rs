//! Library side of the command-line front end: image I/O, config files,
//! synthetic inputs, output rendering and the benchmark harness. The
//! binary in `main.rs` is a thin argument-parsing layer over these
//! modules, which keeps every behavior reachable from tests.

pub mod apply;
pub mod bench;
pub mod config;
pub mod error;
pub mod io;
pub mod synth;

pub use error::CliError;
