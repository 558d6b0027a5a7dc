//! Line-delimited check records.

use std::time::Instant;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// One verification result. Failed and errored records always carry a
/// witness (or at least a message).
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRecord {
    pub check: String,
    pub status: Status,
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
}

impl ReportRecord {
    pub fn pass(check: impl Into<String>) -> Self {
        ReportRecord {
            check: check.into(),
            status: Status::Pass,
            witness: None,
            elapsed_ms: 0,
        }
    }

    pub fn fail(check: impl Into<String>, witness: Value) -> Self {
        ReportRecord {
            check: check.into(),
            status: Status::Fail,
            witness: Some(witness),
            elapsed_ms: 0,
        }
    }

    pub fn error(check: impl Into<String>, err: &crate::Error) -> Self {
        ReportRecord {
            check: check.into(),
            status: Status::Error,
            witness: Some(err.witness()),
            elapsed_ms: 0,
        }
    }

    /// Pass when `witness` is `None`, fail with it otherwise.
    pub fn from_witness(check: impl Into<String>, witness: Option<Value>) -> Self {
        match witness {
            None => Self::pass(check),
            Some(w) => Self::fail(check, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_elapsed(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    /// Timing is left out unless asked for, so identical inputs give
    /// identical bytes.
    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "check": self.check,
            "status": self.status.as_str(),
        });
        if let Some(w) = &self.witness {
            v["witness"] = w.clone();
        }
        if timings {
            v["elapsed"] = json!(self.elapsed_ms);
        }
        v
    }
}

/// Runs `body` and stamps the record with its wall time.
pub fn timed(check: &str, body: impl FnOnce() -> crate::Result<Option<Value>>) -> ReportRecord {
    let started = Instant::now();
    let record = match body() {
        Ok(w) => ReportRecord::from_witness(check, w),
        Err(e) => ReportRecord::error(check, &e),
    };
    record.with_elapsed(started)
}

pub fn all_passed(records: &[ReportRecord]) -> bool {
    records.iter().all(ReportRecord::passed)
}
