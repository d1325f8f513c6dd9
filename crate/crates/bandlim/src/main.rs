use clap::Parser;

fn main() {
    let cli = bandlim::Cli::parse();
    std::process::exit(bandlim::run(&cli));
}
