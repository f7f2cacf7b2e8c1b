use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(smr::run(std::env::args_os()))
}
