use clap::Parser;

fn main() {
    std::process::exit(krall::cli::run(krall::cli::Cli::parse()));
}
