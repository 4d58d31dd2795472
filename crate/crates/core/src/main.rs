fn main() {
    std::process::exit(d7_algebraic::cli::run(std::env::args_os()));
}
