//! Report envelope and its two renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_sha256: String,
    pub result: Value,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: &str, input: &[u8], result: impl Serialize) -> Self {
        Report {
            command: command.to_string(),
            input_sha256: digest(input),
            result: serde_json::to_value(result).expect("results serialize to JSON"),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!(
                    "command: {}\ninput_sha256: {}\n",
                    self.command, self.input_sha256
                );
                text(&mut s, &self.result, 0);
                s
            }
        }
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(inline).collect();
            Some(format!("[{}]", parts?.join(", ")))
        }
        Value::Object(_) => None,
        Value::String(s) => Some(s.clone()),
        other => Some(other.to_string()),
    }
}

fn text(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match inline(item) {
                    Some(line) => writeln!(out, "{pad}{k}: {line}"),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        text(out, item, depth + 1);
                        Ok(())
                    }
                }
                .unwrap();
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match inline(item) {
                    Some(line) => writeln!(out, "{pad}- {line}").unwrap(),
                    None => {
                        writeln!(out, "{pad}- #{}", i + 1).unwrap();
                        text(out, item, depth + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", inline(other).unwrap_or_default()).unwrap(),
    }
}
