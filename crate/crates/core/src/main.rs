fn main() {
    std::process::exit(lindirac::cli::main_with_args(std::env::args_os()));
}
