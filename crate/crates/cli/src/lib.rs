//! Definition-file driver for the `pseudoalg` library: parsing, subcommand dispatch and
//! report emission.

pub mod cli;
pub mod commands;
pub mod literal;
pub mod model;

pub use cli::{main_with_args, Cli};
