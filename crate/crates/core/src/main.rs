fn main() {
    std::process::exit(octoder::cli::main());
}
