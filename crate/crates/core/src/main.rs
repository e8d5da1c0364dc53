use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = lieforge::cli::execute(std::env::args_os().skip(1), &mut out, &mut io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
