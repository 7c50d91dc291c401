fn main() {
    std::process::exit(sigma_forge::cli::run(std::env::args_os()));
}
