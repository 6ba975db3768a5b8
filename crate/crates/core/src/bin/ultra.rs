use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ultra::cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let out = run(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(out.code as u8)
}
