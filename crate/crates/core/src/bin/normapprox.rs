fn main() {
    std::process::exit(normapprox::cli::main_with_args(std::env::args_os()));
}
