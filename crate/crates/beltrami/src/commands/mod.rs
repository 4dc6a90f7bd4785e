//! One module per subcommand. Each exposes its clap arguments, a pure function
//! returning the report, and `run`, which writes output and returns the exit code.

pub mod eigs;
pub mod field;
pub mod project;
pub mod solve;
pub mod trace;
pub mod verify;

use std::path::PathBuf;

use clap::Args;

use crate::formats::Format;

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}
