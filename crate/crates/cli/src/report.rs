//! Report assembly and emission.
//!
//! JSON objects use sorted keys; TSV rows keep insertion order so golden
//! rows read `n=5`, `d=3`, ... left to right.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "lct-lab/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Bare values for single-result commands, otherwise TSV rows.
    Text,
    Json,
    Tsv,
}

/// Ordered key/value row.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Row(pub Vec<(String, Value)>);

impl Row {
    pub fn new() -> Self {
        Row(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn to_json(&self) -> Value {
        Value::Object(self.0.iter().cloned().collect::<Map<String, Value>>())
    }

    pub fn to_tsv(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect::<Vec<_>>().join("\t")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".to_string(),
        Value::Number(n) if n.is_f64() => sig12(n.as_f64().unwrap_or(f64::NAN)),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub config: Row,
    pub rows: Vec<Row>,
    /// Key printed alone in text mode.
    pub headline: Option<String>,
    pub passed: bool,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, config: Row) -> Self {
        Report {
            command: command.to_string(),
            config,
            rows: Vec::new(),
            headline: None,
            passed: true,
            warnings: Vec::new(),
        }
    }

    pub fn row(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn fail_unless(&mut self, ok: bool) {
        self.passed &= ok;
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let v = json!({
                    "schema": SCHEMA,
                    "version": VERSION,
                    "command": self.command,
                    "config": self.config.to_json(),
                    "results": self.rows.iter().map(Row::to_json).collect::<Vec<_>>(),
                    "passed": self.passed,
                    "warnings": self.warnings,
                });
                let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = String::new();
                let header =
                    Row::new().with("schema", SCHEMA).with("version", VERSION).with("command", self.command.as_str());
                let _ = writeln!(s, "# {}\t{}", header.to_tsv(), self.config.to_tsv());
                for w in &self.warnings {
                    let _ = writeln!(s, "# warning: {w}");
                }
                for r in &self.rows {
                    let _ = writeln!(s, "{}", r.to_tsv());
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                match (&self.headline, self.rows.as_slice()) {
                    (Some(key), [row]) => {
                        let _ = writeln!(s, "{}", row.get(key).map(cell).unwrap_or_default());
                    }
                    _ => {
                        for r in &self.rows {
                            let _ = writeln!(s, "{}", r.to_tsv());
                        }
                    }
                }
                s
            }
        }
    }
}

/// `x` with 12 significant digits, trailing zeros removed.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "+inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=12).contains(&exp) {
        return format!("{:.11e}", x);
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}
