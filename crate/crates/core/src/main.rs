fn main() {
    std::process::exit(permdistill::cli::run(std::env::args_os()));
}
