fn main() {
    std::process::exit(koch_tube::cli::main_with_args(std::env::args_os()));
}
