fn main() {
    std::process::exit(lintrans::cli::main());
}
