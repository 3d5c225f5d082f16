fn main() {
    std::process::exit(fourier_jacobi::cli::main_with_args(std::env::args_os()));
}
