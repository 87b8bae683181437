fn main() {
    std::process::exit(trisweep::cli::run(std::env::args()));
}
