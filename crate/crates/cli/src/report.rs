//! Deterministic JSON reports.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use dunkl_core::par;
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Serialize, Clone, Debug)]
pub struct Case {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Clone, Debug, Default)]
pub struct Timings {
    pub total_secs: f64,
    pub cases: BTreeMap<String, f64>,
}

/// Field order is fixed by declaration; only `timings` varies between identical runs.
#[derive(Serialize, Clone, Debug)]
pub struct SuiteReport {
    pub tool_version: &'static str,
    pub system: String,
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Value,
    pub timings: Timings,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }
}

pub type CheckFn = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

/// A named check; `Err` carries the witness.
pub struct CaseSpec {
    pub id: String,
    pub run: CheckFn,
}

impl CaseSpec {
    pub fn new(
        id: impl Into<String>,
        run: impl Fn() -> Result<(), String> + Send + Sync + 'static,
    ) -> Self {
        CaseSpec {
            id: id.into(),
            run: Box::new(run),
        }
    }
}

/// Runs the cases on the work pool and assembles results in input order.
pub fn run_cases(specs: Vec<CaseSpec>) -> (Vec<Case>, BTreeMap<String, f64>) {
    let results = par::map(&specs, |spec| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (spec.run)()))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_text(&p))));
        (outcome, start.elapsed().as_secs_f64())
    });
    let mut cases = Vec::with_capacity(specs.len());
    let mut timings = BTreeMap::new();
    for (spec, (outcome, secs)) in specs.iter().zip(results) {
        let (status, witness) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(w) => (
                Status::Fail,
                Some(if w.is_empty() {
                    "unspecified".to_string()
                } else {
                    w
                }),
            ),
        };
        cases.push(Case {
            id: spec.id.clone(),
            status,
            witness,
        });
        timings.insert(spec.id.clone(), secs);
    }
    (cases, timings)
}

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

pub fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}
