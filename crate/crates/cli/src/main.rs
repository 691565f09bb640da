use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use genocchi_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out, io::stderr());
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(outcome), Ok(())) => outcome.into(),
        (Ok(_), Err(e)) => {
            eprintln!("error: output: {e}");
            ExitCode::from(2)
        }
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
