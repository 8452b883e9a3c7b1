//! Duplicate-vote and identity-swap invariance, and the claim that
//! false-name-proofness with participation forces anonymity.

use std::time::Instant;

use itertools::Itertools;
use serde_json::{json, Value};

use super::{Outcome, VerdictReport};
use crate::axioms::explorer::{merged, zip, Explorer};
use crate::axioms::{check, Axiom, CheckBounds, CheckResult};
use crate::error::Result;
use crate::prefcore::codec::{alternative_to_json, profile_to_json};
use crate::prefcore::{DomainSpec, Universe, VoterId};
use crate::rules::{remark1_bottom, remark1_top, rule_by_name, Keying, RuleSpec, RuleTable, Token, RULE_NAMES};

/// Runs the two hypotheses; a failing one ends the verification early.
fn preconditions(rule: &RuleSpec, bounds: &CheckBounds) -> Result<(Vec<CheckResult>, bool)> {
    let fnp = check(rule, Axiom::Fnp, bounds)?;
    let part = check(rule, Axiom::Participation, bounds)?;
    let ok = fnp.passed() && part.passed();
    Ok((vec![fnp, part], ok))
}

fn invariance(theorem: &str, rule: &RuleSpec, bounds: &CheckBounds, swap: bool) -> Result<VerdictReport> {
    let started = Instant::now();
    bounds.validate()?;
    let params = json!({ "rule": rule.name(), "domain": rule.domain().to_string(), "bounds": bounds.to_json() });
    let report = VerdictReport::new(theorem, params, started);
    let (pre, ok) = preconditions(rule, bounds)?;
    let pre_json: Vec<Value> = pre.iter().map(CheckResult::to_json).collect();
    if !ok {
        let failed: Vec<&str> = pre.iter().filter(|c| !c.passed()).map(|c| c.axiom.name()).collect();
        let summary = format!("{} fails {}", rule.name(), failed.join(" and "));
        return Ok(report.finish(Outcome::PreconditionNotMet, summary, json!({ "preconditions": pre_json }), started));
    }

    let u = rule.universe();
    let mut ex = Explorer::new(rule, bounds)?;
    let c = ex.classes.len();
    let mut compared = 0u64;
    for k in 1..bounds.n_max {
        let societies = ex.societies(k, false);
        ex.charge(societies.len(), c, k, false)?;
        for society in &societies {
            let fresh: Vec<VoterId> = bounds.id_pool.iter().copied().filter(|i| !society.contains(i)).collect();
            for asg in Explorer::assignments(c, k, false) {
                let cp = zip(society, &asg);
                let a = ex.outcome(&cp)?;
                for &(i, g) in &cp {
                    for &j in &fresh {
                        let mut other = merged(cp.clone(), [(j, g)]);
                        if swap {
                            other.retain(|(v, _)| *v != i);
                        }
                        let b = ex.outcome(&other)?;
                        compared += 1;
                        if a != b {
                            let base = ex.concrete(&cp, &[]);
                            let derived = ex.concrete(&other, &[]);
                            ex.confirm(&base, a)?;
                            ex.confirm(&derived, b)?;
                            let artifacts = json!({
                                "preconditions": pre_json,
                                "base": profile_to_json(u, &base),
                                "base_outcome": alternative_to_json(u, a),
                                "derived": profile_to_json(u, &derived),
                                "derived_outcome": alternative_to_json(u, b),
                            });
                            let summary = format!(
                                "outcome changes when voter {j} {} voter {i}",
                                if swap { "replaces" } else { "clones" }
                            );
                            return Ok(report.finish(Outcome::Refuted, summary, artifacts, started));
                        }
                    }
                }
            }
        }
    }
    let summary = format!("{compared} profile pairs agree for {}", rule.name());
    Ok(report.finish(Outcome::Confirmed, summary, json!({ "preconditions": pre_json, "pairs": compared }), started))
}

/// Adding a fresh voter who copies an existing ballot never changes the
/// outcome, for every base society of at most `n_max - 1` voters.
pub fn verify_lemma1(rule: &RuleSpec, bounds: &CheckBounds) -> Result<VerdictReport> {
    invariance("lemma1", rule, bounds, false)
}

/// Replacing a voter by a fresh one with the same ballot never changes the
/// outcome, for every base society of at most `n_max - 1` voters.
pub fn verify_prop1(rule: &RuleSpec, bounds: &CheckBounds) -> Result<VerdictReport> {
    invariance("prop1", rule, bounds, true)
}

/// Exhaustive scan of every labeled rule over two alternatives on the
/// societies inside `{1, 2}`.
pub struct Prop2Scan {
    pub candidates: usize,
    /// Rules passing false-name-proofness and participation.
    pub passing: usize,
    /// Of those, the ones failing anonymity, with their anonymity check.
    pub violators: Vec<(RuleSpec, CheckResult)>,
}

pub fn prop2_scan(cap: u64) -> Result<Prop2Scan> {
    let universe = Universe::with_alternatives(2)?;
    let domain = DomainSpec::universal(universe);
    let template = RuleTable::new(domain, Token::Preference, Keying::Labeled, cap)?;
    let n_prefs = template.preferences().len() as u16;
    let keys: Vec<Vec<(u32, u16)>> = [vec![1u32], vec![2], vec![1, 2]]
        .into_iter()
        .flat_map(|society| {
            let s = society.clone();
            (0..s.len())
                .map(|_| 0..n_prefs)
                .multi_cartesian_product()
                .map(move |toks| s.iter().copied().zip(toks).collect())
        })
        .collect();
    let bounds = CheckBounds::new(2, 1)?.with_pool(vec![VoterId::new(1)?, VoterId::new(2)?])?.with_cap(cap);
    let candidates = 1usize << keys.len();
    let mut passing = 0;
    let mut violators = Vec::new();
    for code in 0..candidates {
        let mut table = template.clone();
        for (bit, key) in keys.iter().enumerate() {
            table.insert(key.clone(), crate::prefcore::Alternative(((code >> bit) & 1) as u8));
        }
        let rule = table.into_rule(format!("scan-{code:03}"));
        if !preconditions(&rule, &bounds)?.1 {
            continue;
        }
        passing += 1;
        let anon = check(&rule, Axiom::Anonymity, &bounds)?;
        if !anon.passed() {
            violators.push((rule, anon));
        }
    }
    Ok(Prop2Scan { candidates, passing, violators })
}

/// Catalog sweep, rule-space scan, and the two non-anonymous rules that
/// keep one of the two hypotheses.
pub fn verify_prop2(objects: usize, bounds: &CheckBounds) -> Result<VerdictReport> {
    let started = Instant::now();
    bounds.validate()?;
    let params =
        json!({ "objects": objects, "bounds": bounds.to_json(), "scan": { "alternatives": 2, "ids": [1, 2] } });
    let report = VerdictReport::new("prop2", params, started);
    let universe = Universe::subsets(objects)?;
    let mut notes = Vec::new();

    let mut sweep = Vec::new();
    let mut sweep_violations = 0;
    for name in RULE_NAMES {
        let rule = rule_by_name(name, &universe)?;
        let (_, ok) = preconditions(&rule, bounds)?;
        let anon = if ok { Some(check(&rule, Axiom::Anonymity, bounds)?) } else { None };
        let violates = anon.as_ref().is_some_and(|a| !a.passed());
        sweep_violations += violates as usize;
        sweep.push(json!({
            "rule": name,
            "fnp_and_participation": ok,
            "anonymity": anon.map(|a| a.to_json()),
        }));
    }
    if sweep_violations > 0 {
        notes.push(format!("{sweep_violations} catalog rules pass both hypotheses but fail anonymity"));
    }

    let scan = prop2_scan(bounds.cap)?;
    if !scan.violators.is_empty() {
        notes.push(format!(
            "{} of {} scanned rules pass both hypotheses but fail anonymity",
            scan.violators.len(),
            scan.passing
        ));
    }
    let scan_json = json!({
        "candidates": scan.candidates,
        "passing_fnp_and_participation": scan.passing,
        "violators": scan.violators.iter().map(|(rule, anon)| json!({
            "rule": rule.name(),
            "table": rule.params()["table"],
            "anonymity": anon.to_json(),
        })).collect::<Vec<_>>(),
    });

    let labels = Universe::with_alternatives(3)?;
    let mut remark = Vec::new();
    for (rule, kept, lost) in [
        (remark1_top(DomainSpec::universal(labels.clone())), Axiom::Participation, Axiom::Fnp),
        (remark1_bottom(DomainSpec::universal(labels.clone())), Axiom::Fnp, Axiom::Participation),
    ] {
        let k = check(&rule, kept, bounds)?;
        let a = check(&rule, Axiom::Anonymity, bounds)?;
        let l = check(&rule, lost, bounds)?;
        if !(k.passed() && !a.passed() && !l.passed()) {
            notes.push(format!("{} does not keep {kept} while losing anonymity and {lost}", rule.name()));
        }
        remark.push(json!({ "rule": rule.name(), "kept": k.to_json(), "anonymity": a.to_json(), "lost": l.to_json() }));
    }

    let outcome = if notes.is_empty() { Outcome::Confirmed } else { Outcome::Refuted };
    let summary = if notes.is_empty() {
        format!("{} scanned rules and the catalog show no non-anonymous rule with both hypotheses", scan.candidates)
    } else {
        notes.join("; ")
    };
    let artifacts = json!({ "catalog": sweep, "scan": scan_json, "remark1": remark });
    Ok(report.finish(outcome, summary, artifacts, started))
}
