//! Per-case results and the machine-readable report.

use serde::Serialize;

use crate::config::SuiteConfig;

/// One verified instance. `ratio` holds the measured quantity (an integral
/// ratio for the inequality suites, a gap for the identity suites) and
/// `slack` its distance to the admissible bound, negative when violated.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub ratio: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
    pub tail: f64,
    pub ms: u64,
}

impl CaseReport {
    pub fn new(id: impl Into<String>, ratio: f64, bound: f64, pass: bool) -> Self {
        Self {
            id: id.into(),
            ratio,
            bound,
            slack: bound - ratio,
            pass,
            tail: 0.0,
            ms: 0,
        }
    }

    pub fn with_tail(mut self, tail: f64) -> Self {
        self.tail = tail;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, config: SuiteConfig, cases: Vec<CaseReport>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        let summary = Summary {
            cases: cases.len(),
            passed,
            failed: cases.len() - passed,
        };
        Self {
            suite: suite.to_string(),
            config,
            cases,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Copy with the wall-clock fields zeroed; two runs with the same seed
    /// serialize identically after this.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.cases {
            c.ms = 0;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,id,ratio,bound,slack,pass,tail,ms\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.suite, c.id, c.ratio, c.bound, c.slack, c.pass, c.tail, c.ms
            ));
        }
        out
    }
}
