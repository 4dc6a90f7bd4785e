use std::ffi::OsString;

use clap::{Parser, Subcommand};

use crate::commands::{eigs, field, project, solve, trace, verify};
use crate::error::exit;

/// Spectral tools for curl and grad-div on a ball.
#[derive(Debug, Parser)]
#[command(name = "beltrami", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalue table of curl or grad-div.
    Eigs(eigs::EigsArgs),
    /// Sample a basis or built-in field.
    Field(field::FieldArgs),
    /// Run verification suites; exit 1 if any check fails.
    Verify(verify::VerifyArgs),
    /// Split a field into potential and vortex expansions.
    Project(project::ProjectArgs),
    /// Solve a grad-div or curl power equation in coefficient space.
    Solve(solve::SolveArgs),
    /// Trace field lines of a curl eigenfield.
    Trace(trace::TraceArgs),
}

pub fn execute(cli: &Cli) -> u8 {
    let result = match &cli.command {
        Command::Eigs(a) => eigs::run(a),
        Command::Field(a) => field::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Project(a) => project::run(a),
        Command::Solve(a) => solve::run(a),
        Command::Trace(a) => trace::run(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    })
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::SUCCESS
            };
            let _ = e.print();
            code
        }
    }
}
