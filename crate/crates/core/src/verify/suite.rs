use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::recipe::Recipe;
use super::report::{CheckRecord, Status, VerificationReport};
use super::runner::{evaluate, Finding, Outcome};
use crate::topology::TopologyKind;

/// One check, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Associativity,
    Grading,
    /// Grading on `samples` random pairs with indices in `[-spread, spread]`.
    GradingFuzz { samples: u64, seed: u64, spread: i64 },
    Idempotents,
    Simple { pairs: usize, enlargement: i64, seed: u64 },
    InverseTransfer { enlargement: i64 },
    RegularTransfer { enlargement: i64 },
    IBisimple { bound: i64 },
    Translation,
    /// `f_{0,n} = e` for `lo <= n <= hi`.
    WarneUnitCoefficient { lo: i64, hi: i64 },
    WarneBranchAgreement,
    Hausdorff,
    SeparateContinuity,
    JointContinuity,
    InversionContinuity,
    NbhdLowerset,
    CoarserStrict,
    RestrictionDiscrete,
    Discrete,
    ApplicableKinds { expected: Vec<TopologyKind> },
    Oip { upto: i64 },
    Example37Containments { indices: (i64, i64), tails: (i64, i64), groups: (i64, i64) },
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Associativity => "associativity",
            Check::Grading => "grading",
            Check::GradingFuzz { .. } => "grading-fuzz",
            Check::Idempotents => "idempotents",
            Check::Simple { .. } => "simple",
            Check::InverseTransfer { .. } => "inverse-transfer",
            Check::RegularTransfer { .. } => "regular-transfer",
            Check::IBisimple { .. } => "i-bisimple",
            Check::Translation => "translation",
            Check::WarneUnitCoefficient { .. } => "warne-unit-coefficient",
            Check::WarneBranchAgreement => "warne-branch-agreement",
            Check::Hausdorff => "hausdorff",
            Check::SeparateContinuity => "separate-continuity",
            Check::JointContinuity => "joint-continuity",
            Check::InversionContinuity => "inversion-continuity",
            Check::NbhdLowerset => "nbhd-lowerset",
            Check::CoarserStrict => "coarser-strict",
            Check::RestrictionDiscrete => "restriction-discrete",
            Check::Discrete => "discrete",
            Check::ApplicableKinds { .. } => "applicable-kinds",
            Check::Oip { .. } => "oip",
            Check::Example37Containments { .. } => "example-3.7-containments",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub check: Check,
    /// The check is expected to find a counterexample; finding one passes.
    #[serde(default)]
    pub expect_failure: bool,
}

impl CheckSpec {
    pub fn label(&self) -> String {
        if self.expect_failure {
            format!("{} (expect failure)", self.check.name())
        } else {
            self.check.name().to_string()
        }
    }
}

impl From<Check> for CheckSpec {
    fn from(check: Check) -> Self {
        CheckSpec { check, expect_failure: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suite {
    pub name: String,
    pub recipe: Recipe,
    pub window: (i64, i64),
    pub g_bound: i64,
    #[serde(default)]
    pub topology: Option<TopologyKind>,
    /// Bound passed to the topology's default schedule; the window's largest
    /// index magnitude when absent.
    #[serde(default)]
    pub schedule: Option<i64>,
    pub checks: Vec<CheckSpec>,
}

impl Suite {
    pub fn new(name: &str, recipe: Recipe, window: (i64, i64), g_bound: i64) -> Self {
        Suite { name: name.into(), recipe, window, g_bound, topology: None, schedule: None, checks: Vec::new() }
    }

    pub fn topology(mut self, kind: TopologyKind) -> Self {
        self.topology = Some(kind);
        self
    }

    pub fn check(mut self, c: Check) -> Self {
        self.checks.push(c.into());
        self
    }

    pub fn expect_failure(mut self, c: Check) -> Self {
        self.checks.push(CheckSpec { check: c, expect_failure: true });
        self
    }

    pub fn schedule_bound(&self) -> i64 {
        self.schedule.unwrap_or(self.window.0.abs().max(self.window.1.abs()))
    }
}

fn status_of(f: &Finding, expect_failure: bool) -> (Status, String) {
    match (f, expect_failure) {
        (Finding::Holds(w), false) => (Status::Pass, w.clone()),
        (Finding::Holds(w), true) => (Status::Fail, format!("no counterexample found; {w}")),
        (Finding::Refuted(w), false) => (Status::Fail, w.clone()),
        (Finding::Refuted(w), true) => (Status::Pass, format!("counterexample as expected: {w}")),
        (Finding::Exhausted(w), false) => (Status::Inconclusive, format!("schedule exhausted: {w}")),
        (Finding::Exhausted(w), true) => (Status::Pass, format!("counterexample within schedule, as expected: {w}")),
        (Finding::Undecidable(w), _) => (Status::Inconclusive, w.clone()),
        (Finding::NotApplicable(w), _) => (Status::ConstructionError, w.clone()),
    }
}

/// Runs every check of the suite. A recipe that fails to build yields a
/// single `construction-error` record.
pub fn run_suite(s: &Suite) -> VerificationReport {
    let start = Instant::now();
    let built = s.recipe.build();
    let records = match built {
        Err(e) => vec![CheckRecord {
            suite: s.name.clone(),
            check: "construction".into(),
            status: Status::ConstructionError,
            witness: e.to_string(),
            counts: Default::default(),
            time_ms: 0,
        }],
        Ok(built) => s
            .checks
            .par_iter()
            .map(|spec| {
                let t = Instant::now();
                let Outcome { finding, counts } = evaluate(&built, &s.recipe, s, &spec.check);
                let (status, witness) = status_of(&finding, spec.expect_failure);
                CheckRecord {
                    suite: s.name.clone(),
                    check: spec.label(),
                    status,
                    witness,
                    counts,
                    time_ms: t.elapsed().as_millis() as u64,
                }
            })
            .collect(),
    };
    VerificationReport { suite: s.name.clone(), records, time_ms: start.elapsed().as_millis() as u64 }
}

/// Runs suites concurrently; reports come back in input order.
pub fn run_suites(suites: &[Suite]) -> Vec<VerificationReport> {
    suites.par_iter().map(run_suite).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::recipe::{Construction, ThetaSpec};

    #[test]
    fn empty_suite_passes() {
        let s = Suite::new("empty", Recipe::new(Construction::ExtBicyclic, "trivial", ThetaSpec::Annihilating), (0, 0), 0);
        let r = run_suite(&s);
        assert!(r.records.is_empty());
        assert_eq!(r.status(), Status::Pass);
    }

    #[test]
    fn bad_recipe_is_a_construction_error() {
        let s = Suite::new("bad", Recipe::new(Construction::Warne, "semilattice2", ThetaSpec::Annihilating), (0, 0), 0)
            .check(Check::Associativity);
        let r = run_suite(&s);
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.status(), Status::ConstructionError);
    }

    #[test]
    fn suite_round_trips_through_json() {
        let s = Suite::new("x", Recipe::new(Construction::Zbr, "c6", ThetaSpec::Table(vec![0, 2, 4, 0, 2, 4])), (-1, 1), 0)
            .topology(TopologyKind::DirectSum)
            .check(Check::Simple { pairs: 3, enlargement: 2, seed: 1 })
            .expect_failure(Check::Example37Containments { indices: (0, 0), tails: (0, 1), groups: (1, 1) });
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<Suite>(&text).unwrap(), s);
    }
}
