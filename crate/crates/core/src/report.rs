//! Structured verification records.

use serde::Serialize;

/// One verdict: which check, on which cell (if any), and why it failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: &str, cell: Option<String>, passed: bool, witness: Option<String>) {
        self.records.push(CheckRecord {
            check: check.to_string(),
            cell,
            passed,
            witness,
        });
    }

    /// Records a check that is not tied to a cell.
    pub fn global(&mut self, check: &str, passed: bool, witness: impl Into<Option<String>>) {
        self.push(check, None, passed, witness.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn count(&self, check: &str) -> usize {
        self.records.iter().filter(|r| r.check == check).count()
    }

    /// True when at least one record of `check` exists and all of them pass.
    pub fn all_pass(&self, check: &str) -> bool {
        self.count(check) > 0 && self.records.iter().filter(|r| r.check == check).all(|r| r.passed)
    }
}
