//! Load a TOML problem file and produce the same JSON report as the CLI.
//!
//! `cargo run --example problem_file -- problems/cusp.toml lambda`

use clap::Parser;
use entrolib::cli::{run_source, Args};

fn main() {
    let mut argv = std::env::args().skip(1);
    let file = argv.next().unwrap_or_else(|| "problems/frobenius_f2.toml".into());
    let command = argv.next().unwrap_or_else(|| "entropy".into());
    let args = Args::parse_from(["entrolib", command.as_str(), file.as_str()]);
    let source = std::fs::read_to_string(&file).expect("readable problem file");
    let outcome = run_source(&args, &source);
    print!("{}", outcome.human);
    println!("{}", serde_json::to_string_pretty(&outcome.report).unwrap());
    std::process::exit(outcome.exit_code);
}
