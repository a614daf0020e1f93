use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = backhaul_secrecy_cli::run(std::env::args_os(), &mut out);
    let _ = out.flush();
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
