fn main() {
    std::process::exit(tgwa::cli::main_with_args(std::env::args_os()));
}
