fn main() {
    std::process::exit(leighton::cli::main_with_args(std::env::args_os()));
}
