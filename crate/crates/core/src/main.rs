fn main() {
    std::process::exit(primeage::cli::run(std::env::args_os()));
}
