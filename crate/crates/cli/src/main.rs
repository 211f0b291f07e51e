fn main() {
    std::process::exit(surfint_cli::run(std::env::args_os()));
}
