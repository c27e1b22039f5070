fn main() {
    std::process::exit(gamma_bialg::cli::main_with_args(std::env::args_os()));
}
