fn main() {
    std::process::exit(isoform::cli::run(std::env::args_os()));
}
