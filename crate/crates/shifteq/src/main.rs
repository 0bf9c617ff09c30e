//! Binary entry point: parse arguments, dispatch, exit with the contract
//! code (0 success/true, 1 negative result, 2 usage/parse, 3 cap).

use clap::Parser;
use shifteq::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}
