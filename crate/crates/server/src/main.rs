use std::net::TcpListener;
use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;
use docmap_server::config::{build_service, Args};
use docmap_server::server::serve;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    let service = match build_service(&args) {
        Ok(s) => Arc::new(s),
        Err(e) => {
            eprintln!("docmap-server: {e}");
            return ExitCode::FAILURE;
        }
    };
    let listener = match TcpListener::bind((args.host.as_str(), args.port)) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("docmap-server: cannot bind {}:{}: {e}", args.host, args.port);
            return ExitCode::FAILURE;
        }
    };
    match serve(listener, service) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("docmap-server: {e}");
            ExitCode::FAILURE
        }
    }
}
