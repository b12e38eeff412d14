fn main() {
    std::process::exit(acps::cli::run(std::env::args_os()));
}
