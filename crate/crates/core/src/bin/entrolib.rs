fn main() {
    std::process::exit(entrolib::cli::main_with_args(std::env::args_os()));
}
