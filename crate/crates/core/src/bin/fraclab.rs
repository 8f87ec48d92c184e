fn main() {
    std::process::exit(fraclab::cli::main_with_args(std::env::args_os()));
}
