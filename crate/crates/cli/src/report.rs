use std::io::Write;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// What a command hands back: a verdict (if it has one), a short text
/// summary, and the JSON payload.
pub struct Outcome {
    pub verdict: Option<bool>,
    pub summary: Vec<String>,
    pub result: Value,
}

impl Outcome {
    pub fn new(verdict: Option<bool>, result: impl Serialize) -> Self {
        Outcome { verdict, summary: Vec::new(), result: serde_json::to_value(result).expect("serializable result") }
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    verdict: Option<&'static str>,
    seed: u64,
    version: &'static str,
    elapsed_ms: u128,
    result: &'a Value,
}

fn verdict_word(v: Option<bool>) -> Option<&'static str> {
    v.map(|b| if b { "pass" } else { "fail" })
}

pub fn emit(command: &str, seed: u64, format: Format, elapsed_ms: u128, out: &Outcome) -> ExitCode {
    match format {
        Format::Json => {
            let report = Report {
                command,
                verdict: verdict_word(out.verdict),
                seed,
                version: env!("CARGO_PKG_VERSION"),
                elapsed_ms,
                result: &out.result,
            };
            out_line(&serde_json::to_string_pretty(&report).expect("serializable report"));
        }
        Format::Text => {
            for l in &out.summary {
                out_line(l);
            }
            if let Some(v) = verdict_word(out.verdict) {
                out_line(&format!("verdict: {v}"));
            }
            out_line(&format!("seed: {seed}"));
        }
    }
    match out.verdict {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}

pub fn emit_error(command: &str, format: Format, err: &k3_frobenius::Error) -> ExitCode {
    match format {
        Format::Json => {
            let v = serde_json::json!({ "command": command, "error": err.to_string() });
            eprintln!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        Format::Text => eprintln!("error: {err}"),
    }
    ExitCode::from(2)
}

// A closed pipe downstream (e.g. `| head`) is not an error worth a panic.
fn out_line(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}
