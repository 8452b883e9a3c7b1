//! The five rules that each keep all but one of the impossibility axioms.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use super::{Outcome, VerdictReport};
use crate::axioms::{check, Axiom, CheckBounds, CheckResult};
use crate::error::Result;
use crate::prefcore::Universe;
use crate::rules::{f_star_distinct, independence_rules, RuleSpec};

#[derive(Clone, Debug)]
pub struct MatrixCell {
    pub rule: String,
    pub axiom: Axiom,
    /// Declared by the rule; `None` when it makes no claim.
    pub expected: Option<bool>,
    pub result: CheckResult,
}

impl MatrixCell {
    pub fn matches(&self) -> bool {
        self.expected.is_none_or(|e| e == self.result.passed())
    }
}

fn row(rule: &RuleSpec, bounds: &CheckBounds) -> Result<Vec<MatrixCell>> {
    Axiom::IMPOSSIBILITY
        .iter()
        .map(|axiom| {
            Ok(MatrixCell {
                rule: rule.name().to_string(),
                axiom: *axiom,
                expected: rule.expected().get(axiom).copied(),
                result: check(rule, *axiom, bounds)?,
            })
        })
        .collect()
}

fn row_json(cells: &[MatrixCell]) -> serde_json::Value {
    json!({
        "rule": cells[0].rule,
        "cells": cells.iter().map(|c| json!({
            "axiom": c.axiom.name(),
            "expected": c.expected.map(|e| if e { "pass" } else { "fail" }),
            "matches": c.matches(),
            "check": c.result.to_json(),
        })).collect::<Vec<_>>(),
    })
}

/// Checks every rule against every axiom and compares with the declared
/// pattern. Returns the report and the main 5×5 cells in row order.
pub fn independence_matrix(objects: usize, bounds: &CheckBounds) -> Result<(VerdictReport, Vec<Vec<MatrixCell>>)> {
    let started = Instant::now();
    bounds.validate()?;
    let params = json!({ "objects": objects, "bounds": bounds.to_json() });
    let report = VerdictReport::new("independence", params, started);
    let u = Universe::subsets(objects)?;
    let rules = independence_rules(&u)?;
    let rows: Vec<Vec<MatrixCell>> = rules.par_iter().map(|r| row(r, bounds)).collect::<Result<_>>()?;
    let extra = row(&f_star_distinct(&u)?, bounds)?;

    let mismatches: Vec<String> = rows
        .iter()
        .flatten()
        .filter(|c| !c.matches())
        .map(|c| format!("{} {} is {}", c.rule, c.axiom, c.result.verdict.name()))
        .collect();
    let outcome = if mismatches.is_empty() { Outcome::Confirmed } else { Outcome::Refuted };
    let summary = if mismatches.is_empty() {
        "each rule fails exactly its designated axiom".to_string()
    } else {
        format!("mismatched cells: {}", mismatches.join(", "))
    };
    let artifacts = json!({
        "axioms": Axiom::IMPOSSIBILITY.iter().map(|a| a.name()).collect::<Vec<_>>(),
        "rows": rows.iter().map(|r| row_json(r)).collect::<Vec<_>>(),
        "supplementary": [row_json(&extra)],
    });
    Ok((report.finish(outcome, summary, artifacts, started), rows))
}
