//! Outcome vocabulary shared by every verifier.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// Two sides of a claimed identity or stage disagree.
    Mismatch,
    /// A congruence family has violations.
    Fail,
    /// A mismatch on a claim flagged in advance as a suspected misprint.
    ErratumCandidate,
    Skipped,
    Error,
}

impl Status {
    /// Whether this status makes a run unsuccessful.
    pub fn is_failure(self) -> bool {
        matches!(self, Status::Mismatch | Status::Fail | Status::Error)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Mismatch => "mismatch",
            Status::Fail => "fail",
            Status::ErratumCandidate => "erratum-candidate",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Counts of case outcomes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub erratum_candidates: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn from_statuses(statuses: impl IntoIterator<Item = Status>) -> Self {
        let mut s = Summary::default();
        for st in statuses {
            s.total += 1;
            match st {
                Status::Pass => s.passed += 1,
                Status::ErratumCandidate => s.erratum_candidates += 1,
                Status::Skipped => s.skipped += 1,
                Status::Mismatch | Status::Fail | Status::Error => s.failed += 1,
            }
        }
        s
    }

    pub fn is_success(&self) -> bool {
        self.failed == 0
    }
}
