fn main() {
    env_logger::init();
    let code = logseries_cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
