fn main() {
    std::process::exit(dispen::cli::run(std::env::args_os()));
}
