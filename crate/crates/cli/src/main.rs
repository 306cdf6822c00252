fn main() {
    std::process::exit(z4codes_cli::run(std::env::args_os()));
}
