fn main() {
    std::process::exit(framecert::cli::run());
}
