//! File formats and subcommands behind the `cellcollapse` binary.

pub mod commands;
pub mod error;
pub mod io;

pub use error::{CliError, Result};
