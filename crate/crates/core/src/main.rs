fn main() {
    std::process::exit(subprofile::cli::run(std::env::args_os()));
}
