fn main() {
    std::process::exit(sqlp::cli::run_batch(std::env::args_os()));
}
