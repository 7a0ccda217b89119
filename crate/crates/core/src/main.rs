fn main() {
    std::process::exit(lcoh::cli::main_with_args(std::env::args_os()));
}
