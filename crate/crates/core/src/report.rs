//! Check outcomes and the machine-readable report emitted by the CLI.

use std::fmt;

use serde::Serialize;

/// Outcome of one exact check: passes iff no failure was recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    failures: Vec<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict::default()
    }

    pub fn failed(witness: impl Into<String>) -> Self {
        Verdict {
            failures: vec![witness.into()],
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.failures.push(witness.into());
    }

    pub fn merge(&mut self, other: Verdict) {
        self.failures.extend(other.failures);
    }

    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub instance: String,
    pub checks: Vec<Check>,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    /// Human-readable lines printed ahead of the checks in text mode.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, instance: impl Into<String>) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            command: command.into(),
            instance: instance.into(),
            checks: Vec::new(),
            exit_code: 0,
            details: None,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, witness: impl Into<String>) {
        if status == Status::Fail {
            self.exit_code = 1;
        }
        self.checks.push(Check {
            name: name.into(),
            status,
            witness: witness.into(),
        });
    }

    pub fn verdict(&mut self, name: impl Into<String>, verdict: &Verdict) {
        if verdict.is_pass() {
            self.push(name, Status::Pass, "");
        } else {
            self.push(name, Status::Fail, verdict.failures().join("; "));
        }
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.push(name, Status::Skip, reason);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.command, self.instance)?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for c in &self.checks {
            if c.witness.is_empty() {
                writeln!(f, "  [{}] {}", c.status, c.name)?;
            } else {
                writeln!(f, "  [{}] {}: {}", c.status, c.name, c.witness)?;
            }
        }
        let summary = if self.passed() { "all checks passed" } else { "FAILED" };
        write!(f, "{summary}")
    }
}
