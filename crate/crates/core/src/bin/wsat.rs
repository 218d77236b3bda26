fn main() {
    std::process::exit(tensor_wsat::cli::run(std::env::args_os()));
}
