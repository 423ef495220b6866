fn main() {
    std::process::exit(drinfeld_cover::cli::main_with_args(std::env::args().collect()));
}
