fn main() {
    std::process::exit(twostar::cli::main_with_args(std::env::args()));
}
