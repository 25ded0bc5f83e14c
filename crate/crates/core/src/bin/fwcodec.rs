fn main() {
    std::process::exit(fwcodec::cli::run(std::env::args_os()));
}
