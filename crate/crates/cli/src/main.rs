mod args;
mod expect;
mod report;

use args::{Cli, Command};
use clap::Parser;
use serde_json::Value;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] arrtopo::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(arrtopo::Error::SearchBudgetExceeded(_) | arrtopo::Error::BudgetExceeded { .. }) => 3,
            _ => 4,
        }
    }
}

fn render_text(v: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(map) = v {
        for (k, val) in map {
            let shown = match val {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {shown}\n"));
        }
    }
    s
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let Command::Catalog = cli.command else {
        let (common, report) = report::dispatch(&cli.command)?;
        match report {
            report::Output::Raw(text) => print!("{text}"),
            report::Output::Report(v) => {
                if common.json {
                    println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
                } else {
                    print!("{}", render_text(&v));
                }
                if let Some(path) = &common.expect {
                    let text = std::fs::read_to_string(path)
                        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                    let golden: Value = serde_json::from_str(&text)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    let diffs = expect::mismatches(&golden, &v);
                    if !diffs.is_empty() {
                        for d in &diffs {
                            eprintln!("mismatch {d}");
                        }
                        return Ok(ExitCode::from(2));
                    }
                    eprintln!("expectation met: {}", path.display());
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    };
    for name in arrtopo::arrangement::CATALOG_NAMES {
        println!("{name}");
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
