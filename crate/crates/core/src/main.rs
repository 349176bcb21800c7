fn main() {
    std::process::exit(strong_match::cli::main_with(std::env::args_os()));
}
