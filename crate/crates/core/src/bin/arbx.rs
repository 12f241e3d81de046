fn main() {
    std::process::exit(arbx::cli::main_with_args(std::env::args_os()));
}
