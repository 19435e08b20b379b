//! Structured pass/fail records for the verification harness.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        }
    }
}

/// One check result. A failing check always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub duration_ms: f64,
}

impl CheckRecord {
    pub fn pass(name: &str, summary: impl Into<String>) -> Self {
        CheckRecord {
            name: name.to_string(),
            status: CheckStatus::Pass,
            summary: summary.into(),
            witness: None,
            duration_ms: 0.0,
        }
    }

    pub fn fail(name: &str, summary: impl Into<String>, witness: Value) -> Self {
        CheckRecord {
            name: name.to_string(),
            status: CheckStatus::Fail,
            summary: summary.into(),
            witness: Some(witness),
            duration_ms: 0.0,
        }
    }

    pub fn skipped(name: &str, reason: impl Into<String>) -> Self {
        CheckRecord {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            summary: reason.into(),
            witness: None,
            duration_ms: 0.0,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn timed(mut self, d: Duration) -> Self {
        self.duration_ms = d.as_secs_f64() * 1000.0;
        self
    }

    /// The record as one line; `time=` is always the final field.
    pub fn line(&self, with_timing: bool) -> String {
        let mut s = format!("{} {}: {}", self.status.as_str(), self.name, self.summary);
        if let Some(w) = &self.witness {
            let _ = write!(s, " witness={}", w);
        }
        if with_timing {
            let _ = write!(s, " time={:.1}ms", self.duration_ms);
        }
        s
    }
}

/// Ordered list of check results.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        debug_assert!(record.status != CheckStatus::Fail || record.witness.is_some());
        self.checks.push(record);
    }

    /// Runs `f`, stamping its duration on the returned record.
    pub fn run(&mut self, f: impl FnOnce() -> CheckRecord) {
        let start = Instant::now();
        let r = f();
        self.push(r.timed(start.elapsed()));
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn render(&self, with_timing: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.line(with_timing));
            out.push('\n');
        }
        out
    }

    /// JSON form; timings are zeroed when `with_timing` is false.
    pub fn to_json(&self, with_timing: bool) -> String {
        let mut copy = self.clone();
        if !with_timing {
            for c in &mut copy.checks {
                c.duration_ms = 0.0;
            }
        }
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }
}
