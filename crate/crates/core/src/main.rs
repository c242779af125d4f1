use clap::Parser;

fn main() {
    std::process::exit(minkext::cli::run(minkext::cli::Cli::parse()));
}
