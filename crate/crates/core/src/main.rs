fn main() {
    std::process::exit(diffgeo::cli::run(std::env::args_os()));
}
