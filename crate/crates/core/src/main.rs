fn main() {
    std::process::exit(weylns::cli::run(std::env::args_os()));
}
