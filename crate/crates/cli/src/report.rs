use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "antinorm";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Reported but not counted against the run.
    Flagged,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Flagged => "FLAG",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub outcome: Outcome,
    pub worst_violation: Option<f64>,
    pub detail: Value,
}

/// Field order here is the order in the emitted JSON.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input_digest: String,
    pub parameters: Value,
    pub checks: Vec<CheckRecord>,
    pub overall_pass: bool,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl RunReport {
    pub fn new(command: &'static str, input: &[u8], parameters: Value) -> Self {
        Self {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command,
            input_digest: digest(input),
            parameters,
            checks: Vec::new(),
            overall_pass: true,
        }
    }

    pub fn push(&mut self, id: impl Into<String>, outcome: Outcome, worst: Option<f64>, detail: impl Serialize) {
        self.overall_pass &= outcome != Outcome::Fail;
        self.checks.push(CheckRecord {
            id: id.into(),
            outcome,
            worst_violation: worst,
            detail: serde_json::to_value(detail).expect("report details serialize"),
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, then the overall verdict.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} {} {}  input {}",
            self.tool, self.version, self.command, self.input_digest
        );
        for c in &self.checks {
            let _ = match c.worst_violation {
                Some(w) => writeln!(s, "  {:<4} {}  (worst {w:e})", c.outcome.label(), c.id),
                None => writeln!(s, "  {:<4} {}", c.outcome.label(), c.id),
            };
        }
        let _ = writeln!(s, "overall: {}", if self.overall_pass { "pass" } else { "fail" });
        s
    }
}
