//! JSON reports: `{suite, version, seed, budget, assertions: [...]}`.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported only, never asserted.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub id: String,
    /// The mathematical claim the assertion exercises.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Value>,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub version: String,
    pub seed: u64,
    pub budget: u128,
    pub assertions: Vec<Assertion>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, budget: u128) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            budget,
            assertions: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.status != Status::Fail)
    }

    pub fn total_millis(&self) -> u128 {
        self.assertions.iter().map(|a| a.millis).sum()
    }

    /// Zero every timing so that identical runs serialize identically.
    pub fn without_timing(mut self) -> Self {
        for a in &mut self.assertions {
            a.millis = 0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
