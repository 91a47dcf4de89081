use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Hash over everything that determines a report: argument values and the
/// bytes of every file read.
#[derive(Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn add(&mut self, label: &str, bytes: &[u8]) -> &mut Self {
        for chunk in [label.as_bytes(), bytes] {
            self.0.update((chunk.len() as u64).to_le_bytes());
            self.0.update(chunk);
        }
        self
    }

    pub fn arg(&mut self, label: &str, value: impl std::fmt::Display) -> &mut Self {
        self.add(label, value.to_string().as_bytes())
    }

    pub fn finish(self) -> String {
        self.0.finalize().iter().fold(String::new(), |mut s, b| {
            write!(s, "{b:02x}").unwrap();
            s
        })
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'a str,
    version: &'a str,
    subcommand: &'a str,
    inputs_digest: &'a str,
    payload: &'a Value,
}

/// A finished run: JSON payload, a plain-text rendering, and whether the
/// requested check succeeded.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub subcommand: &'static str,
    pub inputs_digest: String,
    pub payload: Value,
    pub table: String,
    pub success: bool,
}

impl Outcome {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let env = Envelope {
            tool: "sofic",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: self.subcommand,
            inputs_digest: &self.inputs_digest,
            payload: &self.payload,
        };
        // Round-tripping through Value sorts every object's keys.
        let value = serde_json::to_value(&env).expect("serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    }
}

/// Two-column text table.
#[derive(Default)]
pub struct Table(Vec<(String, String)>);

impl Table {
    pub fn row(&mut self, key: impl Into<String>, value: impl std::fmt::Display) -> &mut Self {
        self.0.push((key.into(), value.to_string()));
        self
    }

    pub fn render(&self) -> String {
        let width = self.0.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        self.0
            .iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

pub fn list<T: std::fmt::Display>(items: impl IntoIterator<Item = T>, max: usize) -> String {
    let items: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if items.len() <= max {
        items.join(" ")
    } else {
        format!("{} … ({} total)", items[..max].join(" "), items.len())
    }
}
