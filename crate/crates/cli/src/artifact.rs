//! The JSON envelope every subcommand writes, and its CSV summary form.

use serde::Serialize;
use serde_json::{json, Value};
use skeletal::config::{OutputFormat, RunConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
}

/// What a subcommand produced. `args` echoes the subcommand's own flags.
pub struct Outcome {
    pub status: Status,
    pub args: Value,
    pub result: Value,
}

impl Outcome {
    pub fn ok(args: Value, result: impl Serialize) -> anyhow::Result<Self> {
        Ok(Self {
            status: Status::Ok,
            args,
            result: serde_json::to_value(result)?,
        })
    }

    pub fn failed(args: Value, result: impl Serialize) -> anyhow::Result<Self> {
        Ok(Self {
            status: Status::Failed,
            args,
            result: serde_json::to_value(result)?,
        })
    }
}

pub fn envelope(command: &str, config: &RunConfig, outcome: &Outcome) -> Value {
    json!({
        "tool": "skeletal",
        "version": VERSION,
        "command": command,
        "status": outcome.status,
        "config": config,
        "args": outcome.args,
        "result": outcome.result,
    })
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// A header and one row: command, status, seed, version, then every scalar
/// field of the result in key order. Nested structures are left out.
pub fn csv_summary(command: &str, config: &RunConfig, outcome: &Outcome) -> anyhow::Result<String> {
    let mut header = vec![
        "command".to_string(),
        "status".into(),
        "seed".into(),
        "version".into(),
    ];
    let status = match outcome.status {
        Status::Ok => "ok",
        Status::Failed => "failed",
    };
    let mut row = vec![
        command.to_string(),
        status.into(),
        config.seed.to_string(),
        VERSION.into(),
    ];
    if let Value::Object(map) = &outcome.result {
        for (k, v) in map {
            if let Some(s) = scalar(v) {
                header.push(k.clone());
                row.push(s);
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    w.write_record(&row)?;
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn render(command: &str, config: &RunConfig, outcome: &Outcome) -> anyhow::Result<String> {
    Ok(match config.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&envelope(command, config, outcome))?;
            s.push('\n');
            s
        }
        OutputFormat::Csv => csv_summary(command, config, outcome)?,
    })
}
