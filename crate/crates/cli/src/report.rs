//! Machine-readable run report.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::config::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskStatus {
    Pass,
    Fail,
    NotApplicable,
    Error,
}

impl From<bool> for TaskStatus {
    fn from(ok: bool) -> Self {
        if ok {
            TaskStatus::Pass
        } else {
            TaskStatus::Fail
        }
    }
}

impl fmt::Display for TaskStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TaskStatus::Pass => "PASS",
            TaskStatus::Fail => "FAIL",
            TaskStatus::NotApplicable => "NOT_APPLICABLE",
            TaskStatus::Error => "ERROR",
        })
    }
}

impl Serialize for TaskStatus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub index: usize,
    pub kind: String,
    pub inputs: Value,
    pub status: TaskStatus,
    pub values: Value,
    pub precision: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub witt_order: &'static str,
    pub fp_embedding: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub tasks_ms: Vec<f64>,
}

/// The deterministic part of a report.
#[derive(Clone, Debug, Serialize)]
pub struct Body {
    pub version: u32,
    pub conventions: Conventions,
    pub seed: u64,
    pub tasks: Vec<Record>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    #[serde(flatten)]
    pub body: Body,
    pub timing: Timing,
}

impl Report {
    pub fn new(seed: u64, tasks: Vec<Record>, tasks_ms: Vec<f64>, total_ms: f64) -> Self {
        Report {
            body: Body {
                version: SCHEMA_VERSION,
                conventions: Conventions {
                    witt_order: rswan_core::witt::ORDER_CONVENTION,
                    fp_embedding: rswan_core::reciprocity::FP_EMBEDDING,
                },
                seed,
                tasks,
            },
            timing: Timing { total_ms, tasks_ms },
        }
    }

    pub fn records(&self) -> &[Record] {
        &self.body.tasks
    }

    /// No record failed or errored.
    pub fn success(&self) -> bool {
        self.records()
            .iter()
            .all(|r| !matches!(r.status, TaskStatus::Fail | TaskStatus::Error))
    }

    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
