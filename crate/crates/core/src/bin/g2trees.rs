fn main() {
    std::process::exit(g2trees::cli::main_with_args(std::env::args_os()));
}
