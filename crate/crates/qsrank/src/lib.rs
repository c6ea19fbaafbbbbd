//! Files, synthetic data, benchmarks and the command line for
//! [`qsrank_core`].

pub mod bench;
pub mod cli;
pub mod error;
pub mod io;
pub mod synthetic;

pub use error::{Error, Result};
