fn main() {
    std::process::exit(pvarlab::cli::run(std::env::args_os()));
}
