use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use coxcell::{configured_threads, run, Cli, RunConfig};

fn main() -> ExitCode {
    // clap exits with status 2 on malformed arguments
    let cli = Cli::parse();
    if let Some(n) = configured_threads() {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool configured once");
    }
    let result = RunConfig::from_cli(cli).and_then(|config| run(&config));
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            let _ = std::io::stdout().flush();
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("coxcell: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
