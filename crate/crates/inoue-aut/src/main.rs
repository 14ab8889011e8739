use clap::Parser;

fn main() {
    let cli = inoue_aut::cli::Cli::parse();
    std::process::exit(inoue_aut::cli::run(cli));
}
