use std::process::ExitCode;

use clap::Parser;
use troproots_cli::{error_json, exit_code, render, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, doc) = match RunConfig::from_cli(&cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => (exit_code(&e), error_json(&e)),
    };
    let text = render(&doc);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
