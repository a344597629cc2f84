fn main() {
    std::process::exit(quiverforge_cli::run(std::env::args_os()));
}
