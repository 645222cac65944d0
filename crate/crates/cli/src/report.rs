//! The JSON run report written to standard output.

use std::time::Instant;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Errors that stop a command before any verdict is reached.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or invalid input (exit 2).
    Input(String),
    /// The solver found nothing within the bounds (exit 3).
    NoSolution(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::NoSolution(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::NoSolution(m) => m,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Input(_) => "input",
            Failure::NoSolution(_) => "no_solution",
        }
    }
}

impl From<commdiff::Error> for Failure {
    fn from(e: commdiff::Error) -> Self {
        match e {
            commdiff::Error::NoSolution(_) => Failure::NoSolution(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

pub struct Report {
    subcommand: &'static str,
    digest: Sha256,
    verdicts: Vec<Value>,
    artifacts: Map<String, Value>,
    primary: Option<String>,
    summary: Vec<String>,
    failed: usize,
    start: Instant,
}

impl Report {
    pub fn new(subcommand: &'static str) -> Self {
        Report {
            subcommand,
            digest: Sha256::new(),
            verdicts: Vec::new(),
            artifacts: Map::new(),
            primary: None,
            summary: Vec::new(),
            failed: 0,
            start: Instant::now(),
        }
    }

    /// Feed raw input bytes into the inputs digest, in reading order.
    pub fn input(&mut self, bytes: &[u8]) {
        self.digest.update((bytes.len() as u64).to_le_bytes());
        self.digest.update(bytes);
    }

    /// Record one check. `outcome` is a short label such as `"zero"`,
    /// `"nonzero"` or `"within_tolerance"`; `detail` must be a JSON object.
    pub fn verdict(&mut self, check: &str, passed: bool, outcome: &str, detail: Value) {
        let mut v = Map::new();
        v.insert("check".into(), json!(check));
        v.insert("passed".into(), json!(passed));
        v.insert("outcome".into(), json!(outcome));
        if let Value::Object(extra) = detail {
            v.extend(extra);
        }
        if !passed {
            self.failed += 1;
        }
        self.verdicts.push(Value::Object(v));
    }

    /// Attach an output; the first one is what `--raw` prints.
    pub fn artifact(&mut self, key: &str, value: Value) {
        if self.primary.is_none() {
            self.primary = Some(key.to_string());
        }
        self.artifacts.insert(key.to_string(), value);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> String {
        let mut lines = self.summary.clone();
        lines.push(format!(
            "{}: {} check(s), {} failed, {:.1} ms",
            self.subcommand,
            self.verdicts.len(),
            self.failed,
            self.elapsed_ms()
        ));
        lines.join("\n")
    }

    fn elapsed_ms(&self) -> f64 {
        self.start.elapsed().as_secs_f64() * 1e3
    }

    fn digest_hex(&self) -> String {
        hex::encode(self.digest.clone().finalize())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subcommand": self.subcommand,
            "inputs_sha256": self.digest_hex(),
            "verdicts": self.verdicts,
            "timing_ms": self.elapsed_ms(),
            "artifacts": self.artifacts,
        })
    }

    pub fn primary_artifact(&self) -> Value {
        self.primary.as_ref().and_then(|k| self.artifacts.get(k)).cloned().unwrap_or(Value::Null)
    }

    pub fn failure_json(&self, f: &Failure) -> Value {
        json!({
            "subcommand": self.subcommand,
            "inputs_sha256": self.digest_hex(),
            "error": { "kind": f.kind(), "message": f.message() },
            "timing_ms": self.elapsed_ms(),
        })
    }
}
