use std::fmt;

use serde::Serialize;

/// One violated axiom, with the names of the witnessing elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub witness: Vec<String>,
    pub detail: String,
}

/// Result of a validation pass. An empty report means every check passed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: &str, witness: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation { rule: rule.to_string(), witness, detail: detail.into() });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Violations of the given rule.
    pub fn of_rule<'a>(&'a self, rule: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return writeln!(f, "OK");
        }
        for v in &self.violations {
            writeln!(f, "{} [{}]: {}", v.rule, v.witness.join(", "), v.detail)?;
        }
        Ok(())
    }
}
