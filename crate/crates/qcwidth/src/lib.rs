//! Readers and writers, the optimization pipeline and the benchmark runner
//! behind the `qcwidth` command.

pub mod bench;
pub mod error;
pub mod formats;
pub mod pipeline;
pub mod verify;

pub use error::{Error, Result};
