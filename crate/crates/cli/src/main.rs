fn main() {
    std::process::exit(lctlab_cli::run(std::env::args_os()));
}
