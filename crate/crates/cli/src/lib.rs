//! Command-line front end for the chain triangulation engine.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod verify;

pub use args::{Cli, Command, Config, Format, Level, ModeArg};
pub use commands::{run, Output};
pub use error::CliError;
