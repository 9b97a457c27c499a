use clap::Parser;

fn main() {
    let cli = untwist_cli::Cli::parse();
    std::process::exit(untwist_cli::run(cli));
}
