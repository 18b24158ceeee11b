//! File formats, command line and acceptance suite on top of `rectiflat-core`.

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod io;
pub mod sample;

pub use error::CliError;
