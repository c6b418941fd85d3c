use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One named pass/fail entry of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: Value,
    /// Shown for reference; does not affect the exit code.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, value: impl Serialize) -> Self {
        Check { name: name.into(), pass, value: to_value(value), informational: false }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

/// What every command prints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, inputs: impl Serialize, outputs: impl Serialize) -> Self {
        RunReport {
            command: command.to_string(),
            seed,
            inputs: to_value(inputs),
            outputs: to_value(outputs),
            checks: Vec::new(),
        }
    }

    pub fn with_checks(mut self, checks: Vec<Check>) -> Self {
        self.checks = checks;
        self
    }

    /// Whether every non-informational check passed.
    pub fn pass(&self) -> bool {
        self.checks.iter().filter(|c| !c.informational).all(|c| c.pass)
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report payloads serialize to JSON")
}
