fn main() {
    std::process::exit(regracut::cli::run(std::env::args_os()));
}
