fn main() {
    std::process::exit(hnl_cli::run(std::env::args_os()));
}
