//! Command-line front end: configuration, sweeps and output files.

pub mod commands;
pub mod config;
pub mod output;
pub mod sweep;

pub use commands::{run, Command};
pub use config::Config;
pub use output::Artifact;
