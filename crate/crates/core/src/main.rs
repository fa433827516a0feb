fn main() {
    std::process::exit(fsts_core::cli::run(std::env::args_os()));
}
