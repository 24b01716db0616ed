//! Library half of the `polarcone` command-line tool: the set-description
//! file format, output rendering and command dispatch.

pub mod commands;
pub mod error;
pub mod format;
pub mod render;

pub use commands::{run, Cli, Command, Output};
pub use error::CliError;
pub use format::{parse_document, to_toml, Document, SetSpec};
