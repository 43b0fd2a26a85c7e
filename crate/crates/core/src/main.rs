use std::process::ExitCode;

use clap::Parser;
use dyform::cli::{error_code, execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let code = match execute(cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("dyform: {e}");
            error_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
