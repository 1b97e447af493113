use clap::Parser;

fn main() {
    let cli = bipath::cli::Cli::parse();
    std::process::exit(bipath::cli::run(&cli));
}
