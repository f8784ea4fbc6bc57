//! Deduction traces: every derived fact records which rule fired, where,
//! and what it concluded, so a result can be replayed and audited.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Stable identifier of the rule that fired.
    pub rule: &'static str,
    /// Location in the object being analyzed, e.g. a term or arrow name.
    pub site: String,
    /// What was concluded.
    pub conclusion: String,
}

impl TraceStep {
    pub fn new(rule: &'static str, site: impl Into<String>, conclusion: impl Into<String>) -> Self {
        TraceStep {
            rule,
            site: site.into(),
            conclusion: conclusion.into(),
        }
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.rule, self.site, self.conclusion)
    }
}
