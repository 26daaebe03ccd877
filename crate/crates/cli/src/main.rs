//! `hodgewalk` command-line tool.

mod args;
mod commands;
mod error;
mod output;

use clap::Parser;

use args::Cli;
use error::CliError;

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("HODGEWALK_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("HODGEWALK_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Compute(e.to_string()))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = configure_threads().and_then(|()| commands::run(&cli.command)) {
        eprintln!("hodgewalk: {e}");
        std::process::exit(e.exit_code());
    }
}
