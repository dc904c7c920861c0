fn main() {
    std::process::exit(netexcite_cli::run(std::env::args_os()));
}
