fn main() {
    std::process::exit(furstenberg_lab::cli::run(std::env::args_os()));
}
