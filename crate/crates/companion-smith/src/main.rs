use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(companion_smith::cli::run() as u8)
}
