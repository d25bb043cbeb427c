//! Machine-readable reports and the exit-code taxonomy.

use std::collections::BTreeMap;

use glaw_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InvariantViolation,
    ParseError,
    PreconditionFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvariantViolation => 1,
            Status::ParseError => 2,
            Status::PreconditionFailed => 3,
        }
    }
}

/// A failed command: the status to exit with and a human-readable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub status: Status,
    pub message: String,
    /// Partial results worth reporting anyway (e.g. the violations found).
    pub result: Value,
}

impl Failure {
    pub fn parse(msg: impl Into<String>) -> Self {
        Failure { status: Status::ParseError, message: msg.into(), result: Value::Null }
    }

    pub fn invariant(msg: impl Into<String>, result: Value) -> Self {
        Failure { status: Status::InvariantViolation, message: msg.into(), result }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::TransitivityRequired(_) => format!("{e} (see `glaw reduce`)"),
            _ => e.to_string(),
        };
        let status = match e {
            Error::InvalidTriplet(_) | Error::DegenerateForm(_) => Status::InvariantViolation,
            Error::DimensionMismatch(_) => Status::ParseError,
            Error::AmbiguousGrading
            | Error::TransitivityRequired(_)
            | Error::NotTerminated(_)
            | Error::TowerTooShort { .. }
            | Error::OutOfRange(_)
            | Error::NoTriple(_)
            | Error::Refused(_) => Status::PreconditionFailed,
        };
        Failure { status, message, result: Value::Null }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletInfo {
    pub name: String,
    /// SHA-256 of the canonical spec JSON.
    pub hash: String,
    pub dim_g0: usize,
    #[serde(rename = "dim_V")]
    pub dim_v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub total_us: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: CommandEcho,
    pub triplet: Option<TripletInfo>,
    pub status: Status,
    pub exit_code: i32,
    pub error: Option<String>,
    pub result: Value,
    /// SHA-256 of this report with `digest` and `timings` removed.
    pub digest: String,
    pub timings: Timings,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(
        command: CommandEcho,
        triplet: Option<TripletInfo>,
        outcome: Result<Value, Failure>,
        total_us: u64,
    ) -> Self {
        let (status, error, result) = match outcome {
            Ok(v) => (Status::Ok, None, v),
            Err(f) => (f.status, Some(f.message), f.result),
        };
        let mut r = Report {
            command,
            triplet,
            status,
            exit_code: status.exit_code(),
            error,
            result,
            digest: String::new(),
            timings: Timings { total_us },
        };
        r.digest = r.compute_digest();
        r
    }

    fn hashed_part(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        let obj = v.as_object_mut().expect("report is an object");
        obj.remove("digest");
        obj.remove("timings");
        v
    }

    pub fn compute_digest(&self) -> String {
        sha256_hex(self.hashed_part().to_string().as_bytes())
    }

    /// Pretty JSON with keys in sorted order, so that emitting a parsed report
    /// reproduces it byte for byte.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    #[cfg(test)]
    pub fn parse(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }
}
