use std::fs;
use std::process::ExitCode;

use clap::Parser;
use fredholm_cli::args::Cli;
use fredholm_cli::{run, CliError};
use serde_json::json;

fn write_json(path: &std::path::Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (mut json, failure) = match run(&cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.report.text);
            (outcome.report.json, outcome.failure)
        }
        Err(e) => (json!({}), Some(e)),
    };
    json["status"] = json!(if failure.is_some() { "error" } else { "ok" });
    if let Some(e) = &failure {
        json["error"] =
            json!({ "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() });
        eprintln!("error: {e}");
    }
    if let Some(path) = &cli.json {
        if let Err(e) = write_json(path, &json) {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    }
    ExitCode::from(failure.map_or(0, |e| e.exit_code()))
}
