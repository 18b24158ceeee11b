fn main() {
    std::process::exit(rectiflat::cli::run(std::env::args_os()));
}
