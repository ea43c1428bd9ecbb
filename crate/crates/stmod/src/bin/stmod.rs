use std::process::ExitCode;

fn main() -> ExitCode {
    stmod::cli::run()
}
