use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde_json::json;

use super::spec::{RuleSpec, View};
use crate::axioms::Axiom;
use crate::error::{Error, Result};
use crate::prefcore::{Alternative, DomainSpec, ObjectSet, Profile, Universe};

/// Claimed profile over the five impossibility axioms: all hold but `fails`.
fn all_but(fails: Axiom) -> impl Iterator<Item = (Axiom, bool)> {
    Axiom::IMPOSSIBILITY.into_iter().map(move |a| (a, a != fails))
}

fn all_five() -> impl Iterator<Item = (Axiom, bool)> {
    Axiom::IMPOSSIBILITY.into_iter().map(|a| (a, true))
}

fn objects_of(universe: &Universe) -> Result<usize> {
    universe.object_count()
}

/// `f^𝒪`: always the whole object set.
pub fn f_const(universe: &Universe) -> Result<RuleSpec> {
    let full = universe.full_set()?;
    Ok(RuleSpec::new("f_const", DomainSpec::universal(universe.clone()), View::Nothing, move |_| Ok(full))
        .with_expected(all_but(Axiom::Ontoness)))
}

/// `f̃`: the common top of the voters ranking `𝒪` second (with top `≠ 𝒪`),
/// when there are such voters and they agree; `𝒪` otherwise.
pub fn f_tilde(universe: &Universe) -> Result<RuleSpec> {
    let full = universe.full_set()?;
    let eval = move |p: &Profile| {
        let mut tops = p.preferences().filter(|q| q.top() != full && q.at_rank(2) == Some(full)).map(|q| q.top());
        Ok(match tops.next() {
            Some(t) if tops.all(|u| u == t) => t,
            _ => full,
        })
    };
    Ok(RuleSpec::new("f_tilde", DomainSpec::universal(universe.clone()), View::TopAndSecondIs(full), eval)
        .with_expected(all_but(Axiom::TopsOnliness)))
}

/// `f^min`: the top of the voter with the least id. Defined on any domain.
pub fn f_min(domain: DomainSpec) -> RuleSpec {
    let rule = RuleSpec::new("f_min", domain, View::Top, |p: &Profile| {
        Ok(p.get(p.min_voter()).expect("min voter is present").top())
    });
    if rule.universe().is_subsets() {
        rule.with_expected(all_but(Axiom::Fnp).chain([(Axiom::Anonymity, false)]))
    } else {
        rule.with_expected([(Axiom::Participation, true), (Axiom::Anonymity, false)])
    }
}

fn unique_top_objects(objects: usize, tops: impl Iterator<Item = Alternative>) -> Alternative {
    let mut counts = vec![0usize; objects];
    for t in tops {
        for o in ObjectSet::from(t).objects() {
            counts[o] += 1;
        }
    }
    ObjectSet::from_objects((0..objects).filter(|o| counts[*o] == 1)).into()
}

/// `f^⋆`: objects lying in exactly one voter's top. Counts voters, so two
/// voters with the same top both count.
pub fn f_star(universe: &Universe) -> Result<RuleSpec> {
    let objects = objects_of(universe)?;
    let eval = move |p: &Profile| Ok(unique_top_objects(objects, p.preferences().map(|q| q.top())));
    Ok(RuleSpec::new("f_star", DomainSpec::universal(universe.clone()), View::Top, eval)
        .with_params(json!({ "count": "voters" }))
        .with_expected(all_but(Axiom::Participation)))
}

/// Variant of `f^⋆` counting distinct tops instead of voters.
pub fn f_star_distinct(universe: &Universe) -> Result<RuleSpec> {
    let objects = objects_of(universe)?;
    let eval = move |p: &Profile| Ok(unique_top_objects(objects, p.distinct_tops().into_iter()));
    Ok(RuleSpec::new("f_star_distinct", DomainSpec::universal(universe.clone()), View::Top, eval)
        .with_params(json!({ "count": "distinct tops" }))
        .with_expected(all_but(Axiom::Participation)))
}

/// The default `≻` over `2^O`: larger sets first, then lexicographic on the
/// sorted object lists, so `{x} ≻ {y} ≻ {z}`. Best first.
pub fn default_succ_order(objects: usize) -> Vec<Alternative> {
    let mut sets: Vec<ObjectSet> = (0..1u32 << objects).map(ObjectSet::from_mask).collect();
    sets.sort_by_key(|s| (Reverse(s.len()), s.objects().collect::<Vec<_>>()));
    sets.into_iter().map(Alternative::from).collect()
}

/// `f^≻`: the `≻`-best top present. `order` lists `2^O` best first and
/// defaults to [`default_succ_order`].
pub fn f_succ(universe: &Universe, order: Option<Vec<Alternative>>) -> Result<RuleSpec> {
    let objects = objects_of(universe)?;
    let order = order.unwrap_or_else(|| default_succ_order(objects));
    let mut rank = vec![usize::MAX; universe.len()];
    for (r, a) in order.iter().enumerate() {
        match rank.get_mut(a.index()) {
            Some(slot) if *slot == usize::MAX => *slot = r,
            _ => return Err(Error::NotALinearOrder(format!("≻ lists {a:?} twice or out of range"))),
        }
    }
    if rank.contains(&usize::MAX) {
        return Err(Error::NotALinearOrder("≻ must rank every subset".into()));
    }
    let names: Vec<String> = order.iter().map(|a| universe.name(*a)).collect();
    let eval =
        move |p: &Profile| Ok(p.preferences().map(|q| q.top()).min_by_key(|t| rank[t.index()]).expect("non-empty"));
    Ok(RuleSpec::new("f_succ", DomainSpec::universal(universe.clone()), View::Top, eval)
        .with_params(json!({ "order": names }))
        .with_expected(all_but(Axiom::ObjectNeutrality)))
}

/// Objects in more than half (`strict`) or at least half of the distinct
/// tops, compared exactly as `2·count` against `|t(P_N)|`.
fn majority_of_distinct_tops(objects: usize, tops: &BTreeSet<Alternative>, strict: bool) -> Alternative {
    let total = tops.len();
    let chosen = (0..objects).filter(|o| {
        let count = tops.iter().filter(|t| ObjectSet::from(**t).contains(*o)).count();
        if strict {
            2 * count > total
        } else {
            2 * count >= total
        }
    });
    ObjectSet::from_objects(chosen).into()
}

/// `f^>` on `𝒮`: objects in strictly more than half of the distinct tops.
pub fn f_gt(universe: &Universe) -> Result<RuleSpec> {
    let objects = objects_of(universe)?;
    let eval = move |p: &Profile| Ok(majority_of_distinct_tops(objects, &p.distinct_tops(), true));
    Ok(RuleSpec::new("f_gt", DomainSpec::separable_over(universe.clone())?, View::Top, eval)
        .with_params(json!({ "threshold": "> half of distinct tops" }))
        .with_expected(all_five()))
}

/// `f^≥` on `𝒮`: objects in at least half of the distinct tops.
pub fn f_geq(universe: &Universe) -> Result<RuleSpec> {
    let objects = objects_of(universe)?;
    let eval = move |p: &Profile| Ok(majority_of_distinct_tops(objects, &p.distinct_tops(), false));
    Ok(RuleSpec::new("f_geq", DomainSpec::separable_over(universe.clone())?, View::Top, eval)
        .with_params(json!({ "threshold": ">= half of distinct tops" }))
        .with_expected(all_five()))
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Quota {
    /// An object needs one supporter.
    One,
    /// An object needs every voter.
    Unanimous,
}

/// Voting by quota on `𝒮`, counting voters.
pub fn quota(universe: &Universe, q: Quota) -> Result<RuleSpec> {
    let full = ObjectSet::from(universe.full_set()?);
    let eval = move |p: &Profile| {
        let tops = p.preferences().map(|x| ObjectSet::from(x.top()));
        Ok(match q {
            Quota::One => tops.fold(ObjectSet::EMPTY, ObjectSet::union),
            Quota::Unanimous => tops.fold(full, ObjectSet::intersection),
        }
        .into())
    };
    let (name, k) = match q {
        Quota::One => ("quota1", json!(1)),
        Quota::Unanimous => ("quota_unanimous", json!("unanimous")),
    };
    Ok(RuleSpec::new(name, DomainSpec::separable_over(universe.clone())?, View::Top, eval)
        .with_params(json!({ "quota": k }))
        .with_expected(all_five()))
}

fn voter_one(p: &Profile) -> Option<&crate::prefcore::Preference> {
    p.iter().next().filter(|(i, _)| i.get() == 1).map(|(_, q)| q)
}

/// Voter 1's top when voter 1 is present, otherwise the status quo
/// (alternative 0).
pub fn remark1_top(domain: DomainSpec) -> RuleSpec {
    RuleSpec::new("remark1_top", domain, View::Top, |p: &Profile| Ok(voter_one(p).map_or(Alternative(0), |q| q.top())))
        .with_params(json!({ "status_quo": 0 }))
        .with_expected([(Axiom::Participation, true), (Axiom::Anonymity, false)])
}

/// Voter 1's bottom when voter 1 is present, otherwise the status quo
/// (alternative 0).
pub fn remark1_bottom(domain: DomainSpec) -> RuleSpec {
    RuleSpec::new("remark1_bottom", domain, View::Bottom, |p: &Profile| {
        Ok(voter_one(p).map_or(Alternative(0), |q| q.bottom()))
    })
    .with_params(json!({ "status_quo": 0 }))
    .with_expected([(Axiom::Fnp, true), (Axiom::Anonymity, false)])
}
