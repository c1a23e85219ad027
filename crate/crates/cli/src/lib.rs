//! Configuration loading, subcommands and report formats for the `tvasym` binary.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{run, Command, Format, RunArgs};
