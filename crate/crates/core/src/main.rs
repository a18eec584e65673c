use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code =
        padexp::cli::parse_and_run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
