fn main() {
    std::process::exit(digitmult::cli::run(std::env::args_os()));
}
