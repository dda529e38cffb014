use std::io::Write;
use std::process::ExitCode;

use permsym::Error;
use serde_json::{json, Map, Value};

/// What a command produced on success.
pub enum Payload {
    Json(Value),
    Csv(String),
}

/// A failed command: the status word, exit code and message.
pub struct Outcome {
    pub status: &'static str,
    pub code: u8,
    pub message: String,
    pub detail: Option<Value>,
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let (status, code) = match e {
            Error::NotInvariant(_) => ("not-invariant", 4),
            Error::CapExceeded { .. } => ("cap-exceeded", 5),
            _ => ("invalid-input", 3),
        };
        Outcome {
            status,
            code,
            message: e.to_string(),
            detail: None,
        }
    }
}

pub fn schema(command: &str) -> String {
    format!("permsym.{command}/1")
}

/// Magnitudes below this print as zero.
pub const FLUSH_TOL: f64 = 1e-13;

/// Rounds to 12 significant digits, flushes round-off noise and clears
/// negative zero.
pub fn round_float(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < FLUSH_TOL {
        return 0.0;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_float(n.as_f64().expect("f64"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

/// Adds the schema and status fields to an object payload.
pub fn envelope(command: &str, status: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(schema(command)));
    map.insert("status".into(), json!(status));
    match body {
        Value::Object(fields) => map.extend(fields),
        Value::Null => {}
        other => {
            map.insert("result".into(), other);
        }
    }
    round_floats(Value::Object(map))
}

// a closed pipe (e.g. `| head`) is not an error worth a panic
fn write_out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

pub fn emit(command: &str, result: Result<Payload, Outcome>) -> ExitCode {
    match result {
        Ok(Payload::Json(body)) => {
            let doc = envelope(command, "ok", body);
            write_out(&format!(
                "{}
",
                serde_json::to_string_pretty(&doc).expect("serializable")
            ));
            ExitCode::SUCCESS
        }
        Ok(Payload::Csv(text)) => {
            write_out(&text);
            ExitCode::SUCCESS
        }
        Err(outcome) => {
            eprintln!("permsym {command}: {}", outcome.message);
            let mut body = json!({ "message": outcome.message });
            if let Some(detail) = outcome.detail {
                body["detail"] = detail;
            }
            let doc = envelope(command, outcome.status, body);
            write_out(&format!(
                "{}
",
                serde_json::to_string_pretty(&doc).expect("serializable")
            ));
            ExitCode::from(outcome.code)
        }
    }
}
