fn main() {
    let code = c3q_cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
