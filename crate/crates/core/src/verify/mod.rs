//! Finite confirmations of the theorem-level claims: constraint search for
//! the impossibility, the maximality construction, the lemma-level
//! invariances, and the independence matrix.

mod csp;
mod lemmas;
mod matrix;
mod remark2;
mod theorem1;
mod theorem2;

use std::fmt;
use std::time::Instant;

use serde_json::{json, Value};

pub use csp::{Budget, Csp, CspOutcome, SearchStats};
pub use lemmas::{prop2_scan, verify_lemma1, verify_prop1, verify_prop2, Prop2Scan};
pub use matrix::{independence_matrix, MatrixCell};
pub use remark2::{divisor_sum_compatible, remark2_scan, remark2_stabilizer, verify_remark2};
pub use theorem1::{verify_theorem1, CspInstance, Theorem1Options};
pub use theorem2::{verify_theorem2, BreachCase};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Outcome {
    Confirmed,
    Refuted,
    /// Bounds or budget ran out before a decision.
    Inconclusive,
    /// The hypothesis of the claim does not hold for the given rule.
    PreconditionNotMet,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Confirmed => "confirmed",
            Outcome::Refuted => "refuted",
            Outcome::Inconclusive => "inconclusive",
            Outcome::PreconditionNotMet => "precondition-not-met",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Confirmed => 0,
            Outcome::Refuted => 1,
            Outcome::Inconclusive | Outcome::PreconditionNotMet => 2,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerdictReport {
    pub theorem: String,
    pub parameters: Value,
    pub outcome: Outcome,
    pub summary: String,
    pub artifacts: Value,
    pub wall_time: f64,
}

impl VerdictReport {
    pub(crate) fn new(theorem: &str, parameters: Value, started: Instant) -> Self {
        VerdictReport {
            theorem: theorem.to_string(),
            parameters,
            outcome: Outcome::Inconclusive,
            summary: String::new(),
            artifacts: json!({}),
            wall_time: started.elapsed().as_secs_f64(),
        }
    }

    pub(crate) fn finish(
        mut self,
        outcome: Outcome,
        summary: impl Into<String>,
        artifacts: Value,
        started: Instant,
    ) -> Self {
        self.outcome = outcome;
        self.summary = summary.into();
        self.artifacts = artifacts;
        self.wall_time = started.elapsed().as_secs_f64();
        self
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.reproducible_json();
        v["wall_time_seconds"] = json!(self.wall_time);
        v
    }

    /// Everything except the wall time; equal inputs give equal values.
    pub fn reproducible_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "theorem": self.theorem,
            "parameters": self.parameters,
            "outcome": self.outcome.name(),
            "summary": self.summary,
            "artifacts": self.artifacts,
        })
    }
}
