use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(isocal_cli::run(std::env::args_os()))
}
