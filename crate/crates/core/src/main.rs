use clap::Parser;
use minsurf::cli::{run, Cli};

fn main() {
    std::process::exit(run(&Cli::parse()));
}
