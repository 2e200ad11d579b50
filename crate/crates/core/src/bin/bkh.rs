fn main() {
    std::process::exit(bkh::cli::run(std::env::args_os()));
}
