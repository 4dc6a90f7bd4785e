//! Command-line front end, file formats and built-in test fields for
//! [`beltrami_core`].

pub mod cli;
pub mod commands;
pub mod error;
pub mod fields;
pub mod formats;
pub mod parse;

pub use error::{CliError, Result};
