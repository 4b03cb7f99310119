fn main() {
    std::process::exit(hodgelie::cli::run(std::env::args_os()));
}
