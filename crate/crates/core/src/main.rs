fn main() {
    std::process::exit(btalg::cli::run(std::env::args_os()));
}
