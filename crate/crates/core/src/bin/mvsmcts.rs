fn main() {
    std::process::exit(mvsmcts::cli::run_cli(std::env::args_os()));
}
