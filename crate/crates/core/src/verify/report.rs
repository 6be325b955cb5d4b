use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// Exhausted a search schedule or hit a form the set algebra refuses.
    Inconclusive,
    Fail,
    ConstructionError,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
            Status::ConstructionError => "construction-error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One line of a report. Field order is the output order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub status: Status,
    pub witness: String,
    pub counts: BTreeMap<String, u64>,
    pub time_ms: u64,
}

impl CheckRecord {
    /// `suite | check | status | witness | counts | time`.
    pub fn text_line(&self) -> String {
        let counts = if self.counts.is_empty() {
            "-".to_string()
        } else {
            self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
        };
        let witness = if self.witness.is_empty() { "-" } else { &self.witness };
        format!("{} | {} | {} | {} | {} | {}ms", self.suite, self.check, self.status, witness, counts, self.time_ms)
    }

    pub fn machine_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    /// The same record with the timing zeroed, for comparing runs.
    pub fn untimed(&self) -> Self {
        CheckRecord { time_ms: 0, ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub records: Vec<CheckRecord>,
    pub time_ms: u64,
}

impl VerificationReport {
    /// The worst record status, `Pass` for an empty suite.
    pub fn status(&self) -> Status {
        self.records.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
    }

    pub fn text(&self) -> String {
        self.records.iter().map(|r| r.text_line() + "\n").collect()
    }

    pub fn machine(&self) -> String {
        self.records.iter().map(|r| r.machine_line() + "\n").collect()
    }
}

/// How the process should exit after running `reports`: 0 when all pass,
/// 1 on any failure, 2 when the worst outcome is inconclusive.
pub fn exit_code(reports: &[VerificationReport]) -> u8 {
    match reports.iter().map(VerificationReport::status).max().unwrap_or(Status::Pass) {
        Status::Pass => 0,
        Status::Inconclusive => 2,
        Status::Fail | Status::ConstructionError => 1,
    }
}
