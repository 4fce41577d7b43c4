fn main() {
    std::process::exit(bvsaito::cli::main_with_args(std::env::args().collect()));
}
