fn main() {
    std::process::exit(stablecore::cli::run());
}
