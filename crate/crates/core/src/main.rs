fn main() {
    std::process::exit(grasscode::cli::run(std::env::args_os()));
}
