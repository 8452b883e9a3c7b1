//! Maximality of the separable domain: the positive rules pass on `𝒮`,
//! and every non-separable preference, added to `𝒮`, lets some voter gain
//! by abstaining under the tops-only extension of `f^>` or `f^≥`.

use std::time::Instant;

use serde_json::{json, Value};

use super::{Outcome, VerdictReport};
use crate::axioms::{check, Axiom, CheckBounds, Witness};
use crate::error::{Error, Result};
use crate::prefcore::codec::{alternative_to_json, preference_to_json};
use crate::prefcore::{
    canonical_separable, enumerate_linear_orders, is_separable, separability_breach, Alternative, DomainSpec,
    ObjectSet, Preference, Profile, Universe, VoterId,
};
use crate::rules::{f_geq, f_gt, quota, tops_only_extension, Quota, RuleSpec};

/// How a preference breaks separability at `(S, x)`, `x ∉ S`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BreachCase {
    /// `x` is in the top, yet `S` beats `S ∪ {x}`.
    DropsTopObject { s: ObjectSet, x: usize },
    /// `x` is outside the top, yet `S ∪ {x}` beats `S`.
    AddsOtherObject { s: ObjectSet, x: usize },
}

impl BreachCase {
    pub fn of(pref: &Preference) -> Result<Option<Self>> {
        Ok(separability_breach(pref)?.map(|(s, x, in_top)| {
            if in_top {
                BreachCase::DropsTopObject { s, x }
            } else {
                BreachCase::AddsOtherObject { s, x }
            }
        }))
    }

    fn to_json(self, u: &Universe) -> Value {
        let (kind, s, x) = match self {
            BreachCase::DropsTopObject { s, x } => ("x-in-top", s, x),
            BreachCase::AddsOtherObject { s, x } => ("x-not-in-top", s, x),
        };
        json!({ "case": kind, "s": alternative_to_json(u, s.into()), "x": u.objects().map(|o| o[x].clone()) })
    }
}

fn lowest(set: ObjectSet) -> usize {
    set.objects().next().expect("caller ensures a nonempty set")
}

/// Tops of the honest voters in the abstention profile for `f^>`
/// (requires a nonempty top).
fn gt_tops(case: BreachCase, top: ObjectSet) -> Vec<ObjectSet> {
    match case {
        BreachCase::DropsTopObject { s, x } => vec![s, s.with(x)],
        BreachCase::AddsOtherObject { s, x } if !top.is_subset(s) => {
            let y = lowest(top.difference(s));
            vec![s, s.with(x), s.with(x).with(y)]
        }
        BreachCase::AddsOtherObject { s, x } => {
            let y = lowest(top);
            vec![s, s.with(x), s.without(y).with(x)]
        }
    }
}

/// The same for `f^≥` (requires a top other than the full set).
fn geq_tops(case: BreachCase, top: ObjectSet, objects: usize) -> Vec<ObjectSet> {
    match case {
        BreachCase::DropsTopObject { s, x } if !s.is_empty() => {
            vec![s, s.with(x), ObjectSet::EMPTY]
        }
        BreachCase::DropsTopObject { x, .. } => {
            let y = lowest(ObjectSet::full(objects).difference(top));
            vec![ObjectSet::EMPTY, ObjectSet::singleton(x), ObjectSet::singleton(y)]
        }
        BreachCase::AddsOtherObject { s, x } => vec![s, s.with(x)],
    }
}

/// Voters `1..=k` hold canonical separable preferences with `tops`; voter
/// `k + 1` holds `extra`. Returns the participation witness when the extra
/// voter strictly prefers the outcome without them.
fn abstention(rule: &RuleSpec, objects: usize, tops: &[ObjectSet], extra: &Preference) -> Result<(Witness, bool)> {
    let mut entries = Vec::with_capacity(tops.len() + 1);
    for (i, t) in tops.iter().enumerate() {
        entries.push((VoterId::new(i as u32 + 1)?, canonical_separable(objects, *t)?));
    }
    let without = Profile::new(entries.clone())?;
    let star = VoterId::new(tops.len() as u32 + 1)?;
    entries.push((star, extra.clone()));
    let with = Profile::new(entries)?;
    let a = rule.evaluate(&with)?;
    let b = rule.evaluate(&without)?;
    let gains = extra.beats(b, a);
    let witness = Witness::Pair {
        base: with,
        derived: without,
        voter: Some(star),
        base_outcome: a,
        derived_outcome: b,
        relabeling: None,
    };
    Ok((witness, gains))
}

/// (a) the positive rules pass the five axioms on `𝒮`; (b) the proof's
/// abstention profiles break participation for every non-separable
/// preference; (c) the participation checker, run on both extensions,
/// agrees with (b).
pub fn verify_theorem2(objects: usize, bounds: &CheckBounds) -> Result<VerdictReport> {
    let started = Instant::now();
    bounds.validate()?;
    let sweep_bounds = CheckBounds::new(4, 1)?.with_cap(bounds.cap);
    let params = json!({ "objects": objects, "bounds": bounds.to_json(), "sweep_bounds": sweep_bounds.to_json() });
    let report = VerdictReport::new("thm2", params, started);
    let u = Universe::subsets(objects)?;
    let full = ObjectSet::full(objects);
    let mut notes = Vec::new();

    let positive_rules = [f_gt(&u)?, f_geq(&u)?, quota(&u, Quota::One)?, quota(&u, Quota::Unanimous)?];
    let mut positive = Vec::new();
    for rule in &positive_rules {
        let mut row = serde_json::Map::new();
        for axiom in Axiom::IMPOSSIBILITY {
            let res = check(rule, axiom, bounds)?;
            if !res.passed() {
                notes.push(format!("{} fails {axiom} on the separable domain", rule.name()));
            }
            row.insert(axiom.name().to_string(), res.to_json());
        }
        positive.push(json!({ "rule": rule.name(), "checks": row }));
    }

    let (gt, geq) = (&positive_rules[0], &positive_rules[1]);
    let mut cases = Vec::new();
    let (mut empty_top, mut full_top, mut interior) = (0usize, 0usize, 0usize);
    let mut non_separable = 0usize;
    for pref in enumerate_linear_orders(1 << objects, bounds.cap)? {
        if is_separable(&pref)? {
            continue;
        }
        non_separable += 1;
        let case =
            BreachCase::of(&pref)?.ok_or_else(|| Error::Inconsistent("non-separable without a breach".into()))?;
        let top = ObjectSet::from(pref.top());
        match (top.is_empty(), top == full) {
            (true, _) => empty_top += 1,
            (_, true) => full_top += 1,
            _ => interior += 1,
        }
        let domain = DomainSpec::separable_plus(u.clone(), pref.clone())?;
        let mut constructed = Vec::new();
        let mut broken = false;
        for (base, applies) in [(gt, !top.is_empty()), (geq, top != full)] {
            let ext = tops_only_extension(base, domain.clone())?;
            let sweep = check(&ext, Axiom::Participation, &sweep_bounds)?;
            let mut entry = json!({ "rule": ext.name(), "applies": applies, "sweep": sweep.to_json() });
            if applies {
                let tops = if base.name() == gt.name() { gt_tops(case, top) } else { geq_tops(case, top, objects) };
                let (witness, gains) = abstention(&ext, objects, &tops, &pref)?;
                if !gains || !witness.replay(&ext, Axiom::Participation, bounds.cap)? {
                    return Err(Error::Inconsistent(format!(
                        "construction failed for {} under {}",
                        pref.order().iter().map(|a| u.name(*a)).collect::<Vec<_>>().join(" > "),
                        ext.name()
                    )));
                }
                broken = true;
                if sweep.passed() {
                    notes.push(format!("participation sweep misses the constructed violation of {}", ext.name()));
                }
                entry["construction"] = witness.to_json(&u);
            }
            constructed.push(entry);
        }
        debug_assert!(broken);
        cases.push(json!({
            "preference": preference_to_json(&u, &pref),
            "top": alternative_to_json(&u, Alternative::from(top)),
            "breach": case.to_json(&u),
            "extensions": constructed,
        }));
    }

    let outcome = if notes.is_empty() { Outcome::Confirmed } else { Outcome::Refuted };
    let summary = if notes.is_empty() {
        format!(
            "{non_separable} non-separable preferences each break participation; {empty_top} with empty top (f^≥ only), {full_top} with full top (f^> only), {interior} others"
        )
    } else {
        notes.join("; ")
    };
    let artifacts = json!({
        "positive": positive,
        "non_separable": non_separable,
        "split": { "empty_top": empty_top, "full_top": full_top, "other": interior },
        "cases": cases,
    });
    Ok(report.finish(outcome, summary, artifacts, started))
}
