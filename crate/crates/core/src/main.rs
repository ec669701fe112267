fn main() {
    std::process::exit(gvcp::cli::run(std::env::args_os()));
}
