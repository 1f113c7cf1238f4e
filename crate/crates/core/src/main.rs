use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(infolab::cli::run() as u8)
}
