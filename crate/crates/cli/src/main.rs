fn main() {
    let code = gdwn_cli::run(std::env::args_os());
    std::process::exit(code);
}
