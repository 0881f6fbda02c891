use clap::Parser;

fn main() {
    let args = minkplane_cli::Args::parse();
    std::process::exit(minkplane_cli::run(&args));
}
