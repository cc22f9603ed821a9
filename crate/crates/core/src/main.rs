fn main() {
    std::process::exit(nlcs::cli::main_with_args(std::env::args_os()));
}
