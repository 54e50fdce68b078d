//! Command-line front end for `sdlab-core`: JSON matrix I/O, one command
//! per library operation, CSV/SVG boundary plots, and the verification
//! suites behind `sdlab verify`.

pub mod args;
pub mod commands;
pub mod config;
pub mod corpus;
pub mod error;
pub mod io;
pub mod plot;
pub mod verify;

pub use config::RunConfig;
pub use error::CliError;
