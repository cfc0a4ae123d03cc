//! Command-line front end: argument definitions, the canon document
//! format, grid rendering and the subcommands themselves.

pub mod args;
pub mod commands;
pub mod document;
pub mod error;
pub mod render;

pub use args::Cli;
pub use error::{CliError, CliResult};
