use clap::Parser;

fn main() {
    let cli = sugeno::cli::Cli::parse();
    std::process::exit(sugeno::cli::run(cli));
}
