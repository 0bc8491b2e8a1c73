fn main() {
    std::process::exit(wiener_max::cli::run(std::env::args_os()));
}
