fn main() {
    let code = castelbound::cli::run(std::env::args_os());
    std::process::exit(code);
}
