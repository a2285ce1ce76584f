fn main() {
    std::process::exit(expdom::cli::run(std::env::args_os()));
}
