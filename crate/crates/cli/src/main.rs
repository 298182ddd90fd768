use std::io::Write;

use clap::Parser;
use hopfquiver_cli::{run, Args};

fn main() {
    let args = Args::parse();
    let outcome = run(&args);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = out.flush();
    std::process::exit(outcome.code);
}
