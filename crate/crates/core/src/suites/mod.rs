//! Verification suites run by `dyform verify`.

mod arith;
mod conductor;
mod matrices;
mod sums;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dring::RingSpec;
use crate::error::{Error, Result};
use crate::gf2::{FieldElem, FieldSpec};
use crate::matgrp::Mat;
use crate::matrix_io::MatrixJson;
use crate::report::{CheckRecord, FieldInfo, Outcome, Report, RingInfo};
use crate::rng::stream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gf2,
    Dring,
    Matgrp,
    Charsums,
    Conductor,
    Endoscopy,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Gf2,
        Suite::Dring,
        Suite::Matgrp,
        Suite::Charsums,
        Suite::Conductor,
        Suite::Endoscopy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gf2 => "gf2",
            Suite::Dring => "dring",
            Suite::Matgrp => "matgrp",
            Suite::Charsums => "charsums",
            Suite::Conductor => "conductor",
            Suite::Endoscopy => "endoscopy",
        }
    }

    /// Suites that build matrices and test congruences modulo `p^2`.
    fn needs_matrices(self) -> bool {
        matches!(self, Suite::Matgrp | Suite::Charsums | Suite::Endoscopy)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}")))
    }
}

/// Parses `all` or a comma-separated list; duplicates collapse and the
/// canonical order is kept.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(part.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::Usage("no suites selected".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub f: u32,
    pub modulus: Option<u64>,
    pub m: u32,
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub negative_control: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            f: 2,
            modulus: None,
            m: crate::dring::DEFAULT_PRECISION,
            n_max: 3,
            samples: 100,
            seed: 0,
            suites: Suite::ALL.to_vec(),
            negative_control: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(Error::Usage("--n-max must be at least 1".into()));
        }
        if self.m == 0 {
            return Err(Error::Usage("--m must be at least 1".into()));
        }
        if self.m < 2 {
            if let Some(s) = self.suites.iter().find(|s| s.needs_matrices()) {
                return Err(Error::Usage(format!("suite {s} needs --m >= 2 (congruences mod p^2)")));
            }
        }
        Ok(())
    }
}

/// Shared state for one run.
pub struct Context {
    pub config: RunConfig,
    pub field: Arc<FieldSpec>,
    pub ring: Arc<RingSpec>,
}

impl Context {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        let field = Arc::new(FieldSpec::new(config.f, config.modulus)?);
        let ring = Arc::new(RingSpec::new(field.clone(), config.m)?);
        Ok(Context { config, field, ring })
    }

    pub fn q(&self) -> u64 {
        u64::from(self.field.q())
    }

    pub fn rng(&self, label: &str, index: u64) -> ChaCha8Rng {
        stream(self.config.seed, label, index)
    }

    pub fn elem(&self, a: FieldElem) -> Value {
        Value::String(self.field.format_elem(a))
    }

    pub fn mat(&self, m: &Mat) -> Value {
        serde_json::to_value(MatrixJson::from_mat(m)).expect("matrix serializes")
    }

    /// Runs `body` on `samples` independent streams in parallel and returns
    /// the witness of the lowest-indexed failing sample.
    pub fn sampled<F>(&self, label: &str, samples: usize, body: F) -> Outcome
    where
        F: Fn(&mut ChaCha8Rng) -> Result<Option<Value>> + Sync,
    {
        let w = (0..samples as u64).into_par_iter().find_map_first(|i| {
            let mut rng = self.rng(label, i);
            match body(&mut rng) {
                Ok(None) => None,
                Ok(Some(w)) => Some(json!({"sample": i, "detail": w})),
                Err(e) => Some(json!({"sample": i, "error": e.to_string()})),
            }
        });
        Outcome::from_witness(w)
    }

    /// Runs `body` on every item in parallel; first failure in item order.
    pub fn exhaustive<T, F>(&self, items: Vec<T>, body: F) -> Outcome
    where
        T: Send + Sync,
        F: Fn(&T) -> Result<Option<Value>> + Sync,
    {
        let w = items.par_iter().find_map_first(|it| match body(it) {
            Ok(w) => w,
            Err(e) => Some(json!({"error": e.to_string()})),
        });
        Outcome::from_witness(w)
    }

    fn field_info(&self) -> FieldInfo {
        FieldInfo {
            f: self.field.degree(),
            q: self.field.q(),
            modulus_bits: format!("{:b}", self.field.modulus()),
        }
    }
}

/// Result of a single-shot check body: `Ok(None)` passes.
pub fn outcome(r: Result<Option<Value>>) -> Outcome {
    match r {
        Ok(w) => Outcome::from_witness(w),
        Err(e) => Outcome::Fail(json!({"error": e.to_string()})),
    }
}

fn suite_checks(ctx: &Context, suite: Suite) -> Vec<CheckRecord> {
    match suite {
        Suite::Gf2 => arith::field_checks(ctx),
        Suite::Dring => arith::ring_checks(ctx),
        Suite::Matgrp => matrices::checks(ctx),
        Suite::Charsums => sums::checks(ctx),
        Suite::Conductor => conductor::checks(ctx),
        Suite::Endoscopy => sums::endoscopy_checks(ctx),
    }
}

/// Runs the selected suites and assembles the report. Records are ordered
/// by suite, then by the order each suite emits them.
pub fn run(config: RunConfig) -> Result<Report<RunConfig>> {
    let ctx = Context::new(config)?;
    let per_suite: Vec<Vec<CheckRecord>> = ctx
        .config
        .suites
        .par_iter()
        .map(|&s| suite_checks(&ctx, s))
        .collect();
    let mut checks: Vec<CheckRecord> = per_suite.into_iter().flatten().collect();
    if ctx.config.negative_control {
        checks.push(sums::negative_control(&ctx));
    }
    let field = ctx.field_info();
    let ring = RingInfo { m: ctx.ring.precision() };
    Ok(Report::new(ctx.config, field, ring, checks))
}

/// Report JSON with every `elapsed_ms` zeroed, for reproducibility checks.
pub fn without_timings(report: &Value) -> Value {
    let mut v = report.clone();
    if let Some(checks) = v.get_mut("checks").and_then(Value::as_array_mut) {
        for c in checks {
            c["elapsed_ms"] = Value::from(0);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn suite_parsing() {
        assert_eq!(parse_suites("all").unwrap(), Suite::ALL.to_vec());
        assert_eq!(parse_suites("dring,gf2,gf2").unwrap(), vec![Suite::Gf2, Suite::Dring]);
        assert!(parse_suites("bogus").is_err());
        assert!(parse_suites("").is_err());
    }

    #[test]
    fn precision_guard() {
        let cfg = RunConfig { m: 1, suites: vec![Suite::Matgrp], ..RunConfig::default() };
        assert!(matches!(run(cfg), Err(Error::Usage(_))));
        let cfg = RunConfig { m: 1, suites: vec![Suite::Gf2], ..RunConfig::default() };
        assert!(run(cfg).unwrap().passed());
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let cfg = RunConfig { f: 1, n_max: 2, samples: 10, seed: 9, ..RunConfig::default() };
        let a = run(cfg.clone()).unwrap();
        let fails: Vec<_> = a.checks.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(fails.is_empty(), "{fails:#?}");
        let b = run(cfg).unwrap();
        let strip = |r: &Report<RunConfig>| without_timings(&serde_json::to_value(r).unwrap());
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn negative_control_fails() {
        let cfg = RunConfig {
            suites: vec![Suite::Conductor],
            negative_control: true,
            ..RunConfig::default()
        };
        let r = run(cfg).unwrap();
        assert!(!r.passed());
        let last = r.checks.last().unwrap();
        assert_eq!(last.status, Status::Fail);
        assert!(last.witness.is_some());
    }
}
