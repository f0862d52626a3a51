//! Check reports.
//!
//! Every validator and sampling suite in this crate produces a
//! [`ValidationReport`]: an ordered list of named checks, each passing,
//! failing, or indeterminate, optionally carrying a witness.  Reports with
//! the same inputs and seed are reproducible bit for bit, so their rendered
//! form is suitable for golden tests and scripting.

use serde::Serialize;
use std::fmt;

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check could not be decided exactly; a bounded search either found
    /// nothing (evidence for pass) or found a counterexample candidate.
    Indeterminate,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "PASS"),
            CheckStatus::Fail => write!(f, "FAIL"),
            CheckStatus::Indeterminate => write!(f, "INDET"),
        }
    }
}

/// One named check with its outcome and an optional witness.
///
/// Witnesses are rendered in the same text syntax the parsers accept
/// (element literals, vectors, labels), so a failing report line can be fed
/// straight back into `build-eval` style experiments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn indeterminate(name: impl Into<String>, witness: Option<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Indeterminate,
            witness,
        }
    }
}

/// An ordered collection of check results.
///
/// The order is the order in which checks were run; it is stable for fixed
/// inputs, so rendered reports are deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport { checks: Vec::new() }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(CheckResult::pass(name));
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(CheckResult::fail(name, witness));
    }

    /// Record `status` under `name`, with a witness only on failure.
    pub fn record(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    /// Append all checks of `other`, prefixing their names with `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for mut check in other.checks {
            check.name = format!("{prefix}/{}", check.name);
            self.checks.push(check);
        }
    }

    /// True when no check failed (indeterminate checks do not count as failures).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
    }

    /// First failing check, if any.
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.failures().next()
    }

    /// Line-oriented rendering: one `CHECK <name> <STATUS> [witness ...]` per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            out.push_str("CHECK ");
            out.push_str(&check.name);
            out.push(' ');
            out.push_str(&check.status.to_string());
            if let Some(w) = &check.witness {
                out.push_str(" witness ");
                out.push_str(w);
            }
            out.push('\n');
        }
        out
    }

    /// Structured rendering (JSON, stable field order).
    pub fn render_structured(&self) -> String {
        // serde_json writes map keys in struct-field order, so this is as
        // deterministic as the text form.
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}
