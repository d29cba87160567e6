use env_logger::Env;

fn main() {
    // KAPPA_LOG=off|info|debug; data payloads never depend on it.
    env_logger::Builder::from_env(Env::new().filter_or("KAPPA_LOG", "off")).init();
    std::process::exit(kappa_core::cli::run(std::env::args_os()));
}
