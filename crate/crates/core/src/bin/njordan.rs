fn main() {
    std::process::exit(njordan::cli::run(std::env::args_os()));
}
