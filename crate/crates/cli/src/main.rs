use clap::Parser;
use skewcycle_cli::{run, Cli};

/// Decomposition trees are walked recursively when written and read.
const STACK: usize = 1 << 30;

fn main() {
    let cli = Cli::parse();
    let code = std::thread::Builder::new()
        .stack_size(STACK)
        .spawn(move || run(&cli))
        .expect("spawn worker thread")
        .join()
        .unwrap_or(2);
    std::process::exit(code);
}
