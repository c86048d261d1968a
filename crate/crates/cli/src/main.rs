fn main() {
    std::process::exit(ritz_fibre_cli::run(std::env::args_os()).code());
}
