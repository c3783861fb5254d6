//! Structured outcomes of axiom checks.

use serde::Serialize;

/// Outcome of one axiom check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// An auxiliary condition that does not hold. Reported, never fatal.
    Flagged,
}

/// Named inputs that reproduce a reported violation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub inputs: Vec<(&'static str, Vec<f64>)>,
}

impl Witness {
    pub fn new() -> Self {
        Self { inputs: Vec::new() }
    }

    pub fn with(mut self, name: &'static str, value: impl Into<Vec<f64>>) -> Self {
        self.inputs.push((name, value.into()));
        self
    }

    pub fn scalar(self, name: &'static str, value: f64) -> Self {
        self.with(name, vec![value])
    }

    pub fn get(&self, name: &str) -> Option<&[f64]> {
        self.inputs.iter().find(|(n, _)| *n == name).map(|(_, v)| v.as_slice())
    }

    /// First component of a named input.
    pub fn value(&self, name: &str) -> Option<f64> {
        self.get(name).and_then(|v| v.first().copied())
    }
}

impl Default for Witness {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomEntry {
    pub axiom: &'static str,
    pub status: Status,
    pub samples: usize,
    pub worst_violation: f64,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub subject: String,
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    /// True when no entry failed. Flagged entries do not count as failures.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn entry(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn status(&self, axiom: &str) -> Option<Status> {
        self.entry(axiom).map(|e| e.status)
    }
}

/// Tracks the worst violation seen for one axiom.
pub(crate) struct Tracker {
    axiom: &'static str,
    tolerance: f64,
    samples: usize,
    worst: f64,
    witness: Option<Witness>,
}

impl Tracker {
    pub fn new(axiom: &'static str, tolerance: f64) -> Self {
        Self {
            axiom,
            tolerance,
            samples: 0,
            worst: 0.0,
            witness: None,
        }
    }

    /// Records one sample. `violation` is the amount by which the axiom is
    /// broken (zero or negative when it holds). NaN counts as infinite.
    pub fn observe(&mut self, violation: f64, witness: impl FnOnce() -> Witness) {
        self.samples += 1;
        let v = if violation.is_nan() { f64::INFINITY } else { violation };
        if v > self.worst {
            self.worst = v;
            self.witness = Some(witness());
        }
    }

    pub fn finish(self) -> AxiomEntry {
        let status = if self.worst > self.tolerance {
            Status::Fail
        } else {
            Status::Pass
        };
        AxiomEntry {
            axiom: self.axiom,
            status,
            samples: self.samples,
            worst_violation: self.worst,
            witness: self.witness,
            note: None,
        }
    }
}
