//! JSON job files, the check runner and the built-in example corpus.
//!
//! A job declares a ring, optional named polynomials, a derivation and an
//! ordered list of checks:
//!
//! ```json
//! {
//!   "name": "pidex",
//!   "ring": { "coefficients": ["t"], "variables": ["X", "Y", "Z"] },
//!   "definitions": { "G": "(X-t)*Z - (X+t)*Y" },
//!   "derivation": { "Y": "X - t", "Z": "X + t" },
//!   "checks": [ { "type": "kernel", "polys": ["X", "G"] } ]
//! }
//! ```

mod corpus;
mod run;
mod spec;

use std::path::Path;

use serde::Serialize;

use crate::derivation::DEFAULT_NILPOTENCY_CAP;
use crate::error::Error;
use crate::groebner::Budget;

pub use corpus::{corpus_names, corpus_source, run_corpus};
pub use run::run_job;
pub use spec::{Check, CheckKind, ExpectedPair, JobSetup, JobSpec, RawJob, RawRing};

/// Version of the report schema.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("invalid ring: {0}")]
    Ring(Error),

    #[error("{}: {error}", parse_location(*.check, .field))]
    Parse { check: Option<usize>, field: String, error: Error },

    #[error("unknown corpus job `{0}`")]
    UnknownCorpusJob(String),
}

fn parse_location(check: Option<usize>, field: &str) -> String {
    match check {
        Some(i) => format!("check {i}, field `{field}`"),
        None => format!("field `{field}`"),
    }
}

/// Limits applied while running a job.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Nilpotency cap for checks that do not set their own.
    pub cap: u32,
    pub budget: Budget,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { cap: DEFAULT_NILPOTENCY_CAP, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: serde_json::Value,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: u32,
    pub job: String,
    pub checks: Vec<CheckResult>,
    pub overall: bool,
}

impl Report {
    pub fn new(job: String, checks: Vec<CheckResult>) -> Self {
        let overall = checks.iter().all(|c| c.status == CheckStatus::Pass);
        Report { version: REPORT_VERSION, job, checks, overall }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, then the verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
            };
            out.push_str(&format!("{status} {} ({} ms)", c.name, c.ms));
            if c.status == CheckStatus::Fail {
                out.push_str(&format!("  {}", c.detail));
            }
            out.push('\n');
        }
        out.push_str(&format!("{}: {}\n", self.job, if self.overall { "all checks passed" } else { "FAILED" }));
        out
    }
}

/// Parses and validates job JSON. `default_name` names the job when the
/// file does not.
pub fn parse_spec(text: &str, default_name: &str) -> Result<JobSpec, JobError> {
    let raw = parse_raw(text)?;
    spec::validate(raw, default_name)
}

/// Parses only the ring, definitions and derivation of a job; any checks
/// are ignored.
pub fn parse_setup(text: &str) -> Result<JobSetup, JobError> {
    spec::validate_setup(&parse_raw(text)?)
}

pub(crate) fn parse_raw(text: &str) -> Result<RawJob, JobError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| JobError::Schema { path: e.path().to_string(), message: e.inner().to_string() })
}

pub fn read_file(path: &Path) -> Result<String, JobError> {
    std::fs::read_to_string(path).map_err(|e| JobError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn load_spec(path: impl AsRef<Path>) -> Result<JobSpec, JobError> {
    let path = path.as_ref();
    let text = read_file(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("job");
    parse_spec(&text, stem)
}
