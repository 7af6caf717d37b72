fn main() {
    std::process::exit(surgeon::cli::run(std::env::args_os()));
}
