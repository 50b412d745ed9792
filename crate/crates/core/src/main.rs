mod cli;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match cli::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                cli::EXIT_USAGE
            } else {
                cli::EXIT_PASS
            });
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match cli::run(cli, &mut out) {
        Ok(code) => code,
        Err(cli::UsageError(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            cli::EXIT_USAGE
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
