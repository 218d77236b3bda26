//! A small formula sweep through the command-line front end.

use tensor_wsat::cli::{execute, Cli, RunConfig};
use clap::Parser;

fn main() {
    let cli = Cli::parse_from(["wsat", "sweep", "--task", "formula", "--dims", "2", "--n-max", "2", "--entry-max", "1", "--family-max", "1"]);
    let outcome = execute(&RunConfig::from_cli(cli).unwrap());
    print!("{}", outcome.stdout);
    eprintln!("exit {}", outcome.code);
}
