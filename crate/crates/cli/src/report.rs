//! Report format shared by every subcommand.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use ucp_core::orthospace::{Axiom, EventId};
use ucp_core::statespace::{State, UcWitness};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
    /// Settings given on the command line instead of their defaults.
    pub overrides: Vec<String>,
}

/// A replayable counterexample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Axiom { axiom: Axiom, events: Vec<EventId> },
    /// A sum entry on a pair that is not orthogonal.
    Structural { e: EventId, f: EventId, sum: EventId },
    Uc { witness: UcWitness },
    /// A tuple where conditioning a mixture disagrees with mixing the conditionals.
    Mixing { mu: State, nu: State, s: String, event: EventId },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into(), witnesses: Vec::new() }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Witness>) -> Self {
        self.witnesses = witnesses;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub settings: Settings,
    pub checks: Vec<Check>,
    pub data: BTreeMap<String, Value>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, settings: Settings) -> Self {
        Report { command: command.into(), settings, checks: Vec::new(), data: BTreeMap::new(), passed: true }
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.checks.iter().flat_map(|c| &c.witnesses)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let s = &self.settings;
        let mut out = format!("ucp {}: tol {:e}, seed {}, samples {}", self.command, s.tol, s.seed, s.samples);
        if !s.overrides.is_empty() {
            let _ = write!(out, " (overridden: {})", s.overrides.join(", "));
        }
        out.push('\n');
        for c in &self.checks {
            let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            for w in &c.witnesses {
                let _ = writeln!(out, "     witness {}", serde_json::to_string(w).expect("serializable"));
            }
        }
        for (k, v) in &self.data {
            let _ = writeln!(out, "{k}: {}", render_value(v));
        }
        let _ = writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Witnesses in a replay file: one witness, a list, or a whole report.
pub fn parse_witnesses(text: &str) -> Result<Vec<Witness>, serde_json::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum ReplayFile {
        One(Witness),
        Many(Vec<Witness>),
        Report(Box<Report>),
    }
    Ok(match serde_json::from_str(text)? {
        ReplayFile::One(w) => vec![w],
        ReplayFile::Many(ws) => ws,
        ReplayFile::Report(r) => r.witnesses().cloned().collect(),
    })
}
