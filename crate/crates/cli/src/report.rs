use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The operation succeeded, or the checked property holds.
    Ok,
    /// A verified negative answer: counterexample, failed check, absent structure.
    Negative,
    /// A budget ran out before the answer was conclusive.
    Timeout,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Timeout => 0,
            Status::Negative => 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub wall_ms: u64,
    /// Per-phase or per-criterion times.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parts: BTreeMap<String, u64>,
}

/// Everything a run writes. `results` is the only part expected to be
/// identical across runs with the same command, config and seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub config: RunConfig,
    pub status: Status,
    pub results: Value,
    pub timings: Timings,
    pub version: String,
}

pub const VERSION: &str = concat!("blowup ", env!("CARGO_PKG_VERSION"));
