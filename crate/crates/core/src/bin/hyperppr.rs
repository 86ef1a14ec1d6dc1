fn main() {
    std::process::exit(hyperppr::cli::run(std::env::args_os()));
}
