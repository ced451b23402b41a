use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use wachspress::report::Check;
use wachspress::Error;

/// Everything a command prints. Without `--timings` the report depends only
/// on the arguments, so equal inputs give byte-identical output.
#[derive(Serialize)]
pub struct RunReport {
    command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<BTreeMap<String, u128>>,
    #[serde(skip)]
    clock: Instant,
    #[serde(skip)]
    invalid: bool,
}

impl RunReport {
    pub fn new(command: Vec<String>, timings: bool) -> Self {
        RunReport {
            command,
            seed: None,
            status: "ok",
            checks: Vec::new(),
            result: Value::Null,
            error: None,
            timings_ms: timings.then(BTreeMap::new),
            clock: Instant::now(),
            invalid: false,
        }
    }

    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn checks(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn result(&mut self, v: Value) {
        self.result = v;
    }

    /// Records the time since the previous lap under `phase`.
    pub fn lap(&mut self, phase: &str) {
        if let Some(t) = self.timings_ms.as_mut() {
            t.insert(phase.to_owned(), self.clock.elapsed().as_millis());
            self.clock = Instant::now();
        }
    }

    /// Violations of a proved statement exit with 1, everything else with 2.
    pub fn set_error(&mut self, e: &Error) {
        self.error = Some(e.to_string());
        self.invalid = !matches!(e, Error::Violation(_) | Error::KernelDimension { .. });
    }

    pub fn exit_code(&self) -> u8 {
        if self.invalid {
            2
        } else if self.error.is_some() || self.checks.iter().any(|c| !c.passed) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&mut self) -> String {
        self.status = match self.exit_code() {
            0 => "ok",
            1 => "violation",
            _ => "invalid-input",
        };
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
