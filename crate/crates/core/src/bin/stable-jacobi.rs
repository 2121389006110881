fn main() {
    std::process::exit(stable_jacobi::cli::run(std::env::args()));
}
