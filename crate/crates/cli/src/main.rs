use std::io;
use std::process::ExitCode;

use streamasm_cli::{parse_args, run, CliError};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut stderr = io::stderr();
    let result = parse_args(&args)
        .map_err(CliError::from)
        .and_then(|command| run(command, io::stdout().lock(), &mut stderr));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
