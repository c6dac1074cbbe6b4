use std::fmt;

use serde::Serialize;

/// One failed axiom together with the data that witnesses the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub message: String,
    pub witness: Vec<String>,
}

/// Outcome of a total validation function. Passes iff there are no
/// violations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(
        &mut self,
        axiom: impl Into<String>,
        message: impl Into<String>,
        witness: impl IntoIterator<Item = String>,
    ) {
        self.violations.push(Violation {
            axiom: axiom.into(),
            message: message.into(),
            witness: witness.into_iter().collect(),
        });
    }

    /// True if some violation carries the given axiom id.
    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("[{}] {}", v.axiom, v.message))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Result of a single named cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    NotApplicable { reason: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail { witness } => write!(f, "FAIL: {witness}"),
            Verdict::NotApplicable { reason } => write!(f, "n/a: {reason}"),
        }
    }
}

impl Verdict {
    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail { witness: witness() }
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        Self {
            name: name.into(),
            verdict,
        }
    }
}

/// An ordered list of named checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub checks: Vec<Check>,
}

impl Evidence {
    pub fn record(&mut self, name: impl Into<String>, verdict: Verdict) {
        self.checks.push(Check::new(name, verdict));
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        self.record(name, Verdict::from_bool(ok, witness));
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict.is_fail())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn extend(&mut self, other: Evidence) {
        self.checks.extend(other.checks);
    }
}
