//! Check verdicts with first counterexamples.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalar::{is_zero_vec, Scalar};

/// A failing index tuple (1-based) with its nonzero residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Names the parts of `tuple`, e.g. `"x | y"`.
    pub layout: String,
    pub tuple: Vec<usize>,
    pub residual: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub checks_run: usize,
    /// Free-form remarks (e.g. which precondition failed).
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, checks_run: usize) -> Self {
        Self {
            name: name.into(),
            passed: true,
            counterexample: None,
            checks_run,
            notes: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, checks_run: usize, cx: Counterexample) -> Self {
        Self {
            name: name.into(),
            passed: false,
            counterexample: Some(cx),
            checks_run,
            notes: Vec::new(),
        }
    }

    /// A failure without a residual (structural preconditions).
    pub fn fail_note(name: impl Into<String>, note: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            counterexample: None,
            checks_run: 0,
            notes: vec![note.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Conjunction of several reports: the first failure wins.
    pub fn all(name: impl Into<String>, parts: &[CheckReport]) -> Self {
        let name = name.into();
        let checks_run = parts.iter().map(|p| p.checks_run).sum();
        match parts.iter().find(|p| !p.passed) {
            None => Self::pass(name, checks_run),
            Some(first) => {
                let mut r = Self {
                    name,
                    passed: false,
                    counterexample: first.counterexample.clone(),
                    checks_run,
                    notes: vec![format!("failed sub-check: {}", first.name)],
                };
                r.notes.extend(first.notes.iter().cloned());
                r
            }
        }
    }

    /// 1-based tuple of the counterexample, if any.
    pub fn failing_tuple(&self) -> Option<&[usize]> {
        self.counterexample.as_ref().map(|c| c.tuple.as_slice())
    }
}

/// A construction whose input failed verification. The value is still
/// built; `report` says which check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unverified<T> {
    pub value: T,
    pub report: CheckReport,
}

/// Evaluates `residual` on every tuple in order and stops at the first
/// nonzero residual. Tuples are 0-based; the report shifts them to 1-based.
///
/// Evaluation may run in parallel, but the reported counterexample is always
/// the first failing tuple in the given order.
pub fn scan<F>(name: &str, layout: &str, tuples: &[Vec<usize>], residual: F) -> CheckReport
where
    F: Fn(&[usize]) -> Vec<Scalar> + Sync,
{
    let hit = tuples
        .par_iter()
        .map(|t| residual(t))
        .position_first(|r| !is_zero_vec(&r));
    match hit {
        None => CheckReport::pass(name, tuples.len()),
        Some(pos) => CheckReport::fail(
            name,
            pos + 1,
            Counterexample {
                layout: layout.to_string(),
                tuple: tuples[pos].iter().map(|i| i + 1).collect(),
                residual: residual(&tuples[pos]),
            },
        ),
    }
}

/// Per-tuple zero/nonzero profile of a residual, in tuple order.
pub fn verdicts<F>(tuples: &[Vec<usize>], residual: F) -> Vec<bool>
where
    F: Fn(&[usize]) -> Vec<Scalar> + Sync,
{
    tuples.par_iter().map(|t| is_zero_vec(&residual(t))).collect()
}

/// Cartesian product of tuple lists, concatenating the parts.
pub fn product(parts: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for part in parts {
        let mut next = Vec::with_capacity(out.len() * part.len());
        for prefix in &out {
            for t in part {
                let mut v = prefix.clone();
                v.extend_from_slice(t);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Serializable summary used by reports and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: bool,
    pub checks_run: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<CounterexampleSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleSummary {
    pub layout: String,
    pub tuple: Vec<usize>,
    pub residual: Vec<String>,
}

impl From<&CheckReport> for CheckSummary {
    fn from(r: &CheckReport) -> Self {
        Self {
            name: r.name.clone(),
            passed: r.passed,
            checks_run: r.checks_run,
            counterexample: r.counterexample.as_ref().map(|c| CounterexampleSummary {
                layout: c.layout.clone(),
                tuple: c.tuple.clone(),
                residual: c.residual.iter().map(crate::scalar::to_text).collect(),
            }),
            notes: r.notes.clone(),
        }
    }
}
