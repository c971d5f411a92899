use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;

use bispan_cli::cli::{execute, Cli, Command};
use bispan_cli::server::{serve, SessionStore};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // Usage errors count as parse errors; help and version are not errors.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Command::Serve { port } = cli.command {
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        return match rt.block_on(serve(port, Arc::new(SessionStore::from_env()))) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(3)
            }
        };
    }
    match execute(&cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
