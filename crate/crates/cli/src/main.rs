use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = distack_cli::run(std::env::args_os());
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(result.status.code() as u8)
}
