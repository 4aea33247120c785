use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use softprob::soft::Coef;
use softprob::{ExtendedSoftNumber, SoftNumber};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Debug)]
pub enum Field {
    Soft(SoftNumber),
    Extended(ExtendedSoftNumber),
    Number(f64),
    Count(usize),
    Flag(bool),
    Text(String),
}

impl From<SoftNumber> for Field {
    fn from(v: SoftNumber) -> Self {
        Field::Soft(v)
    }
}

impl From<ExtendedSoftNumber> for Field {
    fn from(v: ExtendedSoftNumber) -> Self {
        Field::Extended(v)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Number(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Count(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Flag(v)
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_owned())
    }
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Soft(s) => json!({ "soft": s.soft(), "real": s.real() }),
            Field::Extended(e) => json!({ "zlogz": e.zlogz(), "soft": e.soft(), "real": e.real() }),
            Field::Number(x) => json!(x),
            Field::Count(n) => json!(n),
            Field::Flag(b) => json!(b),
            Field::Text(t) => json!(t),
        }
    }

    fn to_human(&self) -> String {
        match self {
            Field::Soft(s) => s.to_string(),
            Field::Extended(e) => e.to_string(),
            Field::Number(x) => Coef(*x).to_string(),
            Field::Count(n) => n.to_string(),
            Field::Flag(b) => b.to_string(),
            Field::Text(t) => t.clone(),
        }
    }
}

/// An ordered list of labelled results.
#[derive(Clone, Debug, Default)]
pub struct Report {
    fields: Vec<(String, Field)>,
    /// Printed before the fields in human mode only.
    preamble: Vec<String>,
    /// Emitted after the fields in json mode only.
    structured: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Field>) {
        self.fields.push((key.to_owned(), value.into()));
    }

    pub fn preamble(&mut self, line: String) {
        self.preamble.push(line);
    }

    pub fn structured(&mut self, key: &str, value: Value) {
        self.structured.push((key.to_owned(), value));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let map: Map<String, Value> = self
                    .fields
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_json()))
                    .chain(self.structured.iter().cloned())
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Object(map))
                    .expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Human => {
                let mut s = String::new();
                for line in &self.preamble {
                    writeln!(s, "{line}").unwrap();
                }
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.fields {
                    writeln!(s, "{k:<width$}  {}", v.to_human()).unwrap();
                }
                s
            }
        }
    }
}
