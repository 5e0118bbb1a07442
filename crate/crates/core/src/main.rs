fn main() {
    std::process::exit(omega_disentangle::cli::run(std::env::args_os()));
}
