use std::io::Write;
use std::process::ExitCode;

use chainpoly_cli::{run, Cli, CliError};
use clap::Parser;

fn execute(cli: &Cli) -> Result<Option<String>, CliError> {
    if let Some(t) = cli.config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    let out = run(cli)?;
    match &cli.config.out {
        Some(path) => std::fs::write(path, &out.body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(out.failure)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(msg)) => {
            eprintln!("chainpoly: {msg}");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("chainpoly: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
