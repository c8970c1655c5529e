use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = chier_cli::run(std::env::args_os());
    let _ = if code == chier_cli::EXIT_ERROR {
        writeln!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    ExitCode::from(code as u8)
}
