fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DUALITY_LOG", "warn")).init();
    std::process::exit(entropic_duality::cli::main_with_args(std::env::args_os()));
}
