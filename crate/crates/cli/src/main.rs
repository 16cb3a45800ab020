use std::io;
use std::process::ExitCode;

use aw_cli::config::PRECISION_ENV;

fn main() -> ExitCode {
    let env = std::env::var(PRECISION_ENV).ok();
    let code = aw_cli::run(
        std::env::args_os(),
        env.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
