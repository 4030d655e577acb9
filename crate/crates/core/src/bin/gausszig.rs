fn main() {
    std::process::exit(gausszig::cli::main());
}
