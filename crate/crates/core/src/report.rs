//! Check records and the JSON/CSV run report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
}

/// Outcome of a check body before timing is attached.
pub enum Outcome {
    Pass,
    Fail(Value),
    Skip(String),
}

impl Outcome {
    pub fn from_witness(w: Option<Value>) -> Self {
        match w {
            None => Outcome::Pass,
            Some(w) => Outcome::Fail(w),
        }
    }
}

/// Fluent builder for one record.
pub struct Check {
    id: String,
    params: BTreeMap<String, Value>,
}

impl Check {
    pub fn new(id: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn run(self, body: impl FnOnce() -> Outcome) -> CheckRecord {
        let start = Instant::now();
        let outcome = body();
        let elapsed_ms = start.elapsed().as_millis() as u64;
        self.finish(outcome, elapsed_ms)
    }

    pub fn skip(self, reason: impl Into<String>) -> CheckRecord {
        self.finish(Outcome::Skip(reason.into()), 0)
    }

    fn finish(mut self, outcome: Outcome, elapsed_ms: u64) -> CheckRecord {
        let (status, witness) = match outcome {
            Outcome::Pass => (Status::Pass, None),
            Outcome::Fail(w) => (Status::Fail, Some(w)),
            Outcome::Skip(reason) => {
                self.params.insert("reason".into(), Value::String(reason));
                (Status::Skip, None)
            }
        };
        CheckRecord {
            id: self.id,
            params: self.params,
            status,
            witness,
            elapsed_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub f: u32,
    pub q: u32,
    pub modulus_bits: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingInfo {
    pub m: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report<C: Serialize> {
    pub version: String,
    pub config: C,
    pub field: FieldInfo,
    pub ring: RingInfo,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl<C: Serialize> Report<C> {
    pub fn new(config: C, field: FieldInfo, ring: RingInfo, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skip += 1,
            }
        }
        Report {
            version: REPORT_VERSION.to_string(),
            config,
            field,
            ring,
            checks,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,status,elapsed_ms\n");
        for c in &self.checks {
            out.push_str(&format!("{},{},{}\n", csv_field(&c.id), c.status.as_str(), c.elapsed_ms));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
