fn main() {
    std::process::exit(fischerlab_cli::run(std::env::args_os()));
}
