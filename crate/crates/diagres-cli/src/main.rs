fn main() {
    std::process::exit(diagres_cli::run(std::env::args_os()));
}
