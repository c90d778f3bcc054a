use std::process::ExitCode;

use clap::Parser;
use log::LevelFilter;

use sm2_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => LevelFilter::Warn,
        1 => LevelFilter::Info,
        _ => LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .target(env_logger::Target::Stderr)
        .init();
    let outcome = run(&cli);
    if let Some(message) = outcome.document.get("message").and_then(|m| m.as_str()) {
        log::error!("{message}");
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&outcome.document).expect("result serializes")
    );
    ExitCode::from(outcome.code as u8)
}
