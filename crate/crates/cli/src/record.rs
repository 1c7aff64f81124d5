//! Output records. The JSON-lines schema is described in `SCHEMA.md`.

use std::io::{self, Write};

use cadence::Text;
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// A byte as printed in records: itself when printable ASCII, escaped otherwise.
pub fn symbol_label(b: u8) -> String {
    b.escape_ascii().to_string()
}

#[derive(Debug, Serialize)]
pub struct SymbolCount {
    pub symbol: String,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub length: usize,
    pub distinct: usize,
    /// Ascending by byte value.
    pub histogram: Vec<SymbolCount>,
}

impl InputDigest {
    pub fn of(text: &Text) -> Self {
        let hist = text.histogram();
        let histogram: Vec<SymbolCount> = (0..=255u8)
            .filter(|&b| hist[b as usize] > 0)
            .map(|b| SymbolCount {
                symbol: symbol_label(b),
                count: hist[b as usize],
            })
            .collect();
        InputDigest {
            length: text.len(),
            distinct: histogram.len(),
            histogram,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Record<R: Serialize, C: Serialize> {
    pub command: &'static str,
    pub input: Option<InputDigest>,
    pub result: R,
    pub counters: C,
    /// Excluded from the determinism contract.
    pub wall_time_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub command: &'static str,
    pub error: ErrorBody,
}

/// The single writer all records go through.
pub struct Sink<W: Write> {
    out: W,
    format: Format,
    first: bool,
}

impl<W: Write> Sink<W> {
    pub fn new(out: W, format: Format) -> Self {
        Sink {
            out,
            format,
            first: true,
        }
    }

    pub fn emit<T: Serialize>(&mut self, record: &T) -> io::Result<()> {
        match self.format {
            Format::Json => {
                serde_json::to_writer(&mut self.out, record).map_err(io::Error::other)?;
                writeln!(self.out)?;
            }
            Format::Human => {
                let value = serde_json::to_value(record).map_err(io::Error::other)?;
                if !self.first {
                    writeln!(self.out)?;
                }
                let mut lines = Vec::new();
                human_lines("", &value, &mut lines);
                for line in lines {
                    writeln!(self.out, "{line}")?;
                }
            }
        }
        self.first = false;
        Ok(())
    }

    pub fn raw(&mut self, bytes: &[u8]) -> io::Result<()> {
        self.out.write_all(bytes)
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes".into() } else { "no".into() }),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// One `key: value` line per leaf. Arrays of scalars stay on one line.
fn human_lines(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                human_lines(&key(k), child, out);
            }
        }
        Value::Array(items) => {
            let flat: Option<Vec<String>> = items.iter().map(scalar).collect();
            match flat {
                Some(parts) => out.push(format!("{prefix}: [{}]", parts.join(", "))),
                None => {
                    for (i, child) in items.iter().enumerate() {
                        human_lines(&key(&i.to_string()), child, out);
                    }
                }
            }
        }
        other => out.push(format!("{prefix}: {}", scalar(other).unwrap_or_default())),
    }
}
