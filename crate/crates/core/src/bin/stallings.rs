fn main() {
    std::process::exit(stallings::cli::run());
}
