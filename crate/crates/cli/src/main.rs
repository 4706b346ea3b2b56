fn main() {
    std::process::exit(sepgeom_cli::main_with(std::env::args_os()));
}
