//! Structured pass/fail records produced by the verifiers.

use std::fmt;
use std::time::Duration;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub tag: String,
    pub status: Status,
    pub detail: String,
}

impl CaseResult {
    pub fn new(
        id: impl Into<String>,
        tag: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
    ) -> Self {
        CaseResult {
            id: id.into(),
            tag: tag.into(),
            status: Status::from_bool(ok),
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Outcome of one verification suite.
///
/// `elapsed` is only filled in when the caller asks for timing; it is the
/// one field that would otherwise make serialization depend on the machine.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub seed: Option<u64>,
    #[serde(serialize_with = "millis")]
    pub elapsed: Option<Duration>,
}

fn millis<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_some(&(d.as_secs_f64() * 1e3)),
        None => s.serialize_none(),
    }
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: Option<u64>) -> Self {
        VerificationReport {
            suite: suite.into(),
            cases: Vec::new(),
            seed,
            elapsed: None,
        }
    }

    pub fn push(&mut self, case: CaseResult) {
        self.cases.push(case);
    }

    pub fn check(
        &mut self,
        id: impl Into<String>,
        tag: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
    ) {
        self.push(CaseResult::new(id, tag, ok, detail));
    }

    pub fn extend(&mut self, cases: impl IntoIterator<Item = CaseResult>) {
        self.cases.extend(cases);
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed())
    }

    pub fn case(&self, id: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.id == id)
    }

    /// Pretty JSON with a fixed field order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per suite plus one line per failing case.
    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        let mut out = format!(
            "{}: {} ({} cases, {} failed)",
            self.suite,
            Status::from_bool(self.passed()),
            self.cases.len(),
            failed
        );
        if let Some(d) = self.elapsed {
            out.push_str(&format!(" in {:.3}s", d.as_secs_f64()));
        }
        for c in self.failures() {
            out.push_str(&format!("\n  FAIL {} [{}]: {}", c.id, c.tag, c.detail));
        }
        out
    }
}
