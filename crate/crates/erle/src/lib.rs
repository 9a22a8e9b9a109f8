//! File IO, corpus reports and the `erle` command-line tool, built on
//! [`erle_core`].

pub mod cli;
pub mod commands;
mod error;
pub mod fixtures;
pub mod report;

pub use error::{CliError, ExitCode};
