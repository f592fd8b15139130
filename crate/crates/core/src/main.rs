fn main() {
    std::process::exit(syzkit::cli::main_with_args(std::env::args_os()));
}
