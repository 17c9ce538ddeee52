mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Format};

fn wants_json(raw: &[String]) -> bool {
    raw.iter().enumerate().any(|(i, a)| {
        a == "--json"
            || a == "--format=json"
            || (a == "--format" && raw.get(i + 1).is_some_and(|v| v == "json"))
    })
}

fn report_error(json: bool, message: &str) -> ExitCode {
    if json {
        let body = serde_json::json!({ "error": message });
        println!(
            "{}",
            serde_json::to_string_pretty(&body).unwrap_or_default()
        );
    } else {
        eprintln!("error: {message}");
    }
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&raw) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if wants_json(&raw) => {
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            return report_error(true, first);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let json = cli.global.format() == Format::Json;
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => return report_error(json, &e.to_string()),
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => std::io::stdout().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        return report_error(json, &format!("cannot write output: {e}"));
    }
    ExitCode::from(outcome.exit)
}
