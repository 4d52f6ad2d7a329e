fn main() {
    std::process::exit(vgx::cli::run());
}
