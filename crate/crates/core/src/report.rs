//! Law-check reports with the stable schema
//! `{suite, law, cases, failures, first_counterexample}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawResult {
    pub suite: String,
    pub law: String,
    pub domain: String,
    pub cases: u64,
    pub failures: u64,
    pub first_counterexample: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LawResult {
    pub fn new(suite: &str, law: &str, domain: impl Into<String>) -> Self {
        LawResult {
            suite: suite.to_string(),
            law: law.to_string(),
            domain: domain.into(),
            cases: 0,
            failures: 0,
            first_counterexample: None,
            note: None,
        }
    }

    /// Counts one case; the counterexample is only built for the first failure.
    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(counterexample());
            }
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Adds another result for the same law.
    pub fn absorb(&mut self, other: LawResult) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.first_counterexample.is_none() {
            self.first_counterexample = other.first_counterexample;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub results: Vec<LawResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, r: LawResult) {
        self.results.push(r);
    }

    /// Appends `other`, folding results with the same (suite, law, domain).
    pub fn merge(&mut self, other: Report) {
        for r in other.results {
            match self
                .results
                .iter_mut()
                .find(|s| s.suite == r.suite && s.law == r.law && s.domain == r.domain)
            {
                Some(s) => s.absorb(r),
                None => self.results.push(r),
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(LawResult::passed)
    }

    pub fn total_failures(&self) -> u64 {
        self.results.iter().map(|r| r.failures).sum()
    }

    pub fn get(&self, law: &str) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.results).expect("report serializes")
    }
}
