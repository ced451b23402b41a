//! Pass/fail records for property checks.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The statement under test, in words.
    pub statement: String,
    pub passed: bool,
    /// Witness of the first failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, statement: &str) -> Self {
        Check {
            name: name.to_owned(),
            statement: statement.to_owned(),
            passed: true,
            witness: None,
            detail: String::new(),
        }
    }

    /// Marks the check failed, keeping the first witness only.
    pub fn fail(&mut self, witness: impl Into<String>) {
        if self.passed {
            self.passed = false;
            self.witness = Some(witness.into());
        }
    }

    pub fn require(&mut self, condition: bool, witness: impl FnOnce() -> String) {
        if !condition {
            self.fail(witness());
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
