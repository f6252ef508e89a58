fn main() {
    std::process::exit(flatvol_cli::main_with_args(std::env::args_os()));
}
