fn main() {
    std::process::exit(starconf::cli::main());
}
