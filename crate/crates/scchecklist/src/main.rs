use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(scchecklist::cli::run())
}
