//! Check bookkeeping shared by the verification suites.
//!
//! Every verified identity is recorded as a [`Check`] carrying the anchor
//! tag of the equation or statement it certifies, so a failure points
//! directly at the claim that broke.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub paper_anchor: String,
    pub status: CheckStatus,
    pub details: String,
}

/// An ordered collection of checks; verification routines append to one
/// and callers decide what a failure means (tests assert, the CLI sets
/// the exit code).  Failures are recorded, never panicked on.
#[derive(Debug, Clone, Default, Serialize)]
#[serde(transparent)]
pub struct CheckSet {
    checks: Vec<Check>,
}

impl CheckSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        ok: bool,
        details: impl Into<String>,
    ) {
        self.checks.push(Check {
            name: name.into(),
            paper_anchor: anchor.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            details: details.into(),
        });
    }

    pub fn merge(&mut self, other: CheckSet) {
        self.checks.extend(other.checks);
    }

    /// Merge with every check name prefixed, for sweep aggregation.
    pub fn merge_prefixed(&mut self, prefix: &str, other: CheckSet) {
        for mut check in other.checks {
            check.name = format!("{prefix}{}", check.name);
            self.checks.push(check);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect()
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl IntoIterator for CheckSet {
    type Item = Check;
    type IntoIter = std::vec::IntoIter<Check>;
    fn into_iter(self) -> Self::IntoIter {
        self.checks.into_iter()
    }
}
