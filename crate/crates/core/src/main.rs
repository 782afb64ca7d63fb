fn main() {
    std::process::exit(deform_zeros::cli::run(std::env::args_os().collect()));
}
