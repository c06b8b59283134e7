//! Structured pass/fail evidence shared by the validators and the harness.

use std::fmt;

/// One violation with a machine-readable code and a human witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub code: String,
    pub detail: String,
}

/// Outcome of a validation pass. Violations are entries, not errors;
/// an empty report passes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub findings: Vec<Finding>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn flag(&mut self, code: impl Into<String>, detail: impl Into<String>) {
        self.findings.push(Finding {
            code: code.into(),
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.findings.extend(other.findings);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            writeln!(f, "pass")
        } else {
            for finding in &self.findings {
                writeln!(f, "fail {}: {}", finding.code, finding.detail)?;
            }
            Ok(())
        }
    }
}
