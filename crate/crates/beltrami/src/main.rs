use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(beltrami::cli::main_with(std::env::args_os()))
}
