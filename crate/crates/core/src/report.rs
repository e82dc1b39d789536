//! Structured pass/fail results for identity checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numkernel::Tolerance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub identity_name: String,
    pub max_residual: f64,
    pub pass: bool,
}

/// Outcome of a named suite of checks. `overall_pass` is the conjunction of
/// every check's `pass`; an empty report passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite_name: String,
    pub checks: Vec<CheckResult>,
    pub overall_pass: bool,
}

impl VerificationReport {
    pub fn new(suite_name: impl Into<String>) -> Self {
        VerificationReport {
            suite_name: suite_name.into(),
            checks: Vec::new(),
            overall_pass: true,
        }
    }

    /// Record a numeric check. NaN residuals fail.
    pub fn record(&mut self, identity_name: impl Into<String>, residual: f64, tol: Tolerance) -> &mut Self {
        let pass = tol.accepts(residual);
        self.push(identity_name.into(), residual, pass);
        self
    }

    /// Record a structural (exact) check: residual 0 when it holds, 1 otherwise.
    pub fn record_exact(&mut self, identity_name: impl Into<String>, holds: bool) -> &mut Self {
        self.push(identity_name.into(), if holds { 0.0 } else { 1.0 }, holds);
        self
    }

    fn push(&mut self, identity_name: String, max_residual: f64, pass: bool) {
        self.overall_pass &= pass;
        self.checks.push(CheckResult {
            identity_name,
            max_residual,
            pass,
        });
    }

    /// Append another report's checks, prefixing their names with its suite.
    pub fn absorb(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(
                format!("{}/{}", other.suite_name, c.identity_name),
                c.max_residual,
                c.pass,
            );
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn check(&self, identity_name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.identity_name == identity_name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Same report with checks ordered by name.
    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.identity_name.cmp(&b.identity_name));
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite_name)?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {:<56} residual {:.3e}",
                if c.pass { "pass" } else { "FAIL" },
                c.identity_name,
                c.max_residual
            )?;
        }
        write!(
            f,
            "overall: {} ({} checks, max residual {:.3e})",
            if self.overall_pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.max_residual()
        )
    }
}
