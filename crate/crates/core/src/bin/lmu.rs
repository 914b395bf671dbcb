fn main() {
    std::process::exit(lambdamu::cli::main_with_args(std::env::args_os()));
}
