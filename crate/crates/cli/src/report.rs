use std::io::Write;
use std::path::Path;

use ramsey_lab::Error;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Successful runs exit 0, including negative answers.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::usage(format!("{}: {err}", path.display()))
    }

    pub fn in_file(path: &Path, err: Error) -> Self {
        let mut f = Self::from(err);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let (code, kind) = match &err {
            Error::Inconclusive { .. } => (EXIT_INCONCLUSIVE, "inconclusive"),
            Error::Invariant(_) => (EXIT_INTERNAL, "invariant"),
            Error::Precondition(_) => (EXIT_USAGE, "precondition"),
            Error::Disjointness(_) => (EXIT_USAGE, "precondition"),
            Error::Config(_) => (EXIT_USAGE, "config"),
            _ => (EXIT_USAGE, "input"),
        };
        Self {
            code,
            kind,
            message: err.to_string(),
        }
    }
}

pub type Outcome = Result<Value, Failure>;

pub fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

/// The report envelope. `elapsed_ms` is written last, on its own line, and
/// is the only field that varies between identical runs.
pub fn render(subcommand: &str, inputs: Value, seed: u64, outcome: &Outcome, elapsed_ms: f64) -> String {
    let mut top = Map::new();
    top.insert("schema_version".into(), json!(SCHEMA_VERSION));
    top.insert("subcommand".into(), json!(subcommand));
    top.insert("inputs".into(), inputs);
    top.insert("seeds".into(), json!({ "seed": seed }));
    match outcome {
        Ok(result) => {
            top.insert("result".into(), result.clone());
        }
        Err(f) => {
            top.insert("error".into(), json!({ "kind": f.kind, "message": f.message }));
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(top)).expect("json");
    text.pop();
    text.push_str(&format!(",\n  \"elapsed_ms\": {elapsed_ms:.3}\n}}\n"));
    text
}

/// `key: value` lines for the result fields, values in compact JSON.
pub fn render_text(subcommand: &str, outcome: &Outcome, elapsed_ms: f64) -> String {
    let mut out = format!("subcommand: {subcommand}\n");
    match outcome {
        Ok(Value::Object(fields)) => {
            for (k, v) in fields {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        Ok(other) => out.push_str(&format!("result: {other}\n")),
        Err(f) => out.push_str(&format!("error ({}): {}\n", f.kind, f.message)),
    }
    out.push_str(&format!("elapsed_ms: {elapsed_ms:.3}\n"));
    out
}

pub fn write_text_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(text.as_bytes()))
        .map_err(|e| Failure::io(path, e))
}
