fn main() {
    std::process::exit(molcode::cli::main_with_args(std::env::args_os()));
}
