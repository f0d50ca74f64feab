fn main() {
    std::process::exit(vecasp::cli::run(std::env::args_os()));
}
