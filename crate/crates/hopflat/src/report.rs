//! JSON report types shared by the verification suites and the CLI.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named check inside a suite, with a counterexample payload on failure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// The offending input tuple and both evaluated sides of a failed identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub dims: BTreeMap<String, u64>,
    pub wall_time: f64,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            checks: vec![],
            dims: BTreeMap::new(),
            wall_time: 0.0,
        }
    }

    pub fn pass(&mut self, name: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            status: Status::Pass,
            counterexample: None,
        });
    }

    pub fn fail(&mut self, name: &str, input: String, lhs: String, rhs: String) {
        self.checks.push(Check {
            name: name.to_string(),
            status: Status::Fail,
            counterexample: Some(Counterexample { input, lhs, rhs }),
        });
    }

    /// Records an equality check outcome in one call.
    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> (String, String, String)) {
        if ok {
            self.pass(name);
        } else {
            let (input, lhs, rhs) = detail();
            self.fail(name, input, lhs, rhs);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.dims.extend(other.dims);
    }
}
