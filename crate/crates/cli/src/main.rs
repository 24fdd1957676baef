use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use georefine_cli::{run, Cli, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let head = text.split("Usage:").next().unwrap_or_default();
            let head = head.strip_prefix("error: ").unwrap_or(head);
            let reason = head.split_whitespace().collect::<Vec<_>>().join(" ");
            eprintln!("E: usage: {reason}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("E: {}", e.message.replace('\n', " "));
            ExitCode::from(e.code as u8)
        }
    }
}
