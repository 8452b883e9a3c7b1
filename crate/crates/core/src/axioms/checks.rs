use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};

use serde_json::{json, Value};

use super::bounds::CheckBounds;
use super::explorer::{merged, zip, ClassProfile, Explorer};
use super::witness::{Relabeling, Witness};
use super::Axiom;
use crate::error::{Error, Result};
use crate::prefcore::{
    permute_alternatives, AltPermutation, Alternative, ObjectPermutation, Preference, Profile, Universe, VoterId,
    VoterPermutation,
};
use crate::rules::RuleSpec;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    /// No violation exists within the bounds.
    Pass,
    Fail,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass-within-bounds",
            Verdict::Fail => "fail",
        }
    }
}

/// Outcome of one bounded axiom check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub rule: String,
    pub universe: Universe,
    pub domain: String,
    pub axiom: Axiom,
    pub bounds: CheckBounds,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Whether the anonymity pre-pass allowed one society per size.
    pub anonymous_collapse: bool,
    /// Distinct rule evaluations performed.
    pub evaluations: u64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "rule": self.rule,
            "domain": self.domain,
            "axiom": self.axiom,
            "bounds": self.bounds.to_json(),
            "verdict": self.verdict.name(),
            "anonymous_collapse": self.anonymous_collapse,
            "evaluations": self.evaluations,
        });
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json(&self.universe);
        }
        v
    }
}

/// Checks `axiom` for `rule` over every profile within `bounds`.
///
/// Apart from anonymity itself, each check first runs the anonymity check
/// up to the largest society it will evaluate; when that passes, societies
/// collapse to one per size and profiles to multisets.
pub fn check(rule: &RuleSpec, axiom: Axiom, bounds: &CheckBounds) -> Result<CheckResult> {
    let mut ex = Explorer::new(rule, bounds)?;
    let witness = if axiom == Axiom::Anonymity {
        anonymity(&mut ex, bounds.n_max)?
    } else {
        let reach = match axiom {
            Axiom::Fnp | Axiom::StrongFnp => bounds.max_with_clones(),
            _ => bounds.n_max,
        };
        ex.anonymous = anonymity(&mut ex, reach)?.is_none();
        match axiom {
            Axiom::Ontoness => ontoness(&mut ex)?,
            Axiom::TopsOnliness => tops_onliness(&mut ex)?,
            Axiom::Fnp => fnp(&mut ex, false)?,
            Axiom::StrongFnp => fnp(&mut ex, true)?,
            Axiom::Participation => participation(&mut ex)?,
            Axiom::Neutrality => neutrality(&mut ex)?,
            Axiom::ObjectNeutrality => object_neutrality(&mut ex)?,
            Axiom::Anonymity => unreachable!(),
        }
    };
    Ok(CheckResult {
        rule: rule.name().to_string(),
        universe: rule.universe().clone(),
        domain: rule.domain().to_string(),
        axiom,
        bounds: bounds.clone(),
        verdict: if witness.is_some() { Verdict::Fail } else { Verdict::Pass },
        witness,
        anonymous_collapse: ex.anonymous && axiom != Axiom::Anonymity,
        evaluations: ex.evaluations,
    })
}

pub fn check_ontoness(rule: &RuleSpec, bounds: &CheckBounds) -> Result<CheckResult> {
    check(rule, Axiom::Ontoness, bounds)
}

pub fn check_tops_onliness(rule: &RuleSpec, bounds: &CheckBounds) -> Result<CheckResult> {
    check(rule, Axiom::TopsOnliness, bounds)
}

pub fn check_fnp(rule: &RuleSpec, bounds: &CheckBounds) -> Result<CheckResult> {
    check(rule, Axiom::Fnp, bounds)
}

pub fn check_strong_fnp(rule: &RuleSpec, bounds: &CheckBounds) -> Result<CheckResult> {
    check(rule, Axiom::StrongFnp, bounds)
}

pub fn check_participation(rule: &RuleSpec, bounds: &CheckBounds) -> Result<CheckResult> {
    check(rule, Axiom::Participation, bounds)
}

pub fn check_anonymity(rule: &RuleSpec, bounds: &CheckBounds) -> Result<CheckResult> {
    check(rule, Axiom::Anonymity, bounds)
}

pub fn check_neutrality(rule: &RuleSpec, bounds: &CheckBounds) -> Result<CheckResult> {
    check(rule, Axiom::Neutrality, bounds)
}

pub fn check_object_neutrality(rule: &RuleSpec, bounds: &CheckBounds) -> Result<CheckResult> {
    check(rule, Axiom::ObjectNeutrality, bounds)
}

fn anonymity(ex: &mut Explorer, max_size: usize) -> Result<Option<Witness>> {
    let c = ex.classes.len();
    for k in 1..=max_size {
        let societies = ex.societies(k, false);
        ex.charge(societies.len(), c, k, false)?;
        let mut seen: HashMap<Vec<u32>, (ClassProfile, Alternative)> = HashMap::new();
        for society in &societies {
            for asg in Explorer::assignments(c, k, false) {
                let cp = zip(society, &asg);
                let a = ex.outcome(&cp)?;
                let mut key = asg;
                key.sort_unstable();
                match seen.get(&key) {
                    None => {
                        seen.insert(key, (cp, a));
                    }
                    Some((first, b)) if *b != a => {
                        let sigma = matching_permutation(first, &cp);
                        let base = ex.concrete(first, &[]);
                        let derived = ex.concrete(&cp, &[]);
                        ex.confirm(&base, *b)?;
                        ex.confirm(&derived, a)?;
                        debug_assert_eq!(base.permute_voters(&sigma), derived);
                        return Ok(Some(Witness::Pair {
                            base,
                            derived,
                            voter: None,
                            base_outcome: *b,
                            derived_outcome: a,
                            relabeling: Some(Relabeling::Voters(sigma)),
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(None)
}

/// `σ` with `σ(base) = derived`: voters matched group by group, completed
/// to a bijection of the union of both societies.
fn matching_permutation(base: &ClassProfile, derived: &ClassProfile) -> VoterPermutation {
    let mut used = vec![false; derived.len()];
    let mut pairs = Vec::new();
    for (i, c) in base {
        let j = (0..derived.len()).find(|j| !used[*j] && derived[*j].1 == *c).expect("same group multiset");
        used[j] = true;
        pairs.push((*i, derived[j].0));
    }
    let n: BTreeSet<VoterId> = base.iter().map(|(i, _)| *i).collect();
    let m: BTreeSet<VoterId> = derived.iter().map(|(i, _)| *i).collect();
    pairs.extend(m.difference(&n).copied().zip(n.difference(&m).copied()));
    VoterPermutation::new(pairs).expect("matching is a bijection")
}

fn ontoness(ex: &mut Explorer) -> Result<Option<Witness>> {
    let c = ex.classes.len();
    let n_alts = ex.rule.universe().len();
    let full: u64 = if n_alts == 64 { u64::MAX } else { (1u64 << n_alts) - 1 };
    for k in 1..=ex.bounds.n_max {
        let societies = ex.societies(k, ex.anonymous);
        ex.charge(societies.len(), c, k, ex.anonymous)?;
        for society in &societies {
            let mut attained = 0u64;
            for asg in Explorer::assignments(c, k, ex.anonymous) {
                attained |= ex.outcome(&zip(society, &asg))?.bit();
                if attained == full {
                    break;
                }
            }
            if attained != full {
                let missing = Alternative((!attained & full).trailing_zeros() as u8);
                return Ok(Some(Witness::Unattained { society: society.clone(), missing }));
            }
        }
    }
    Ok(None)
}

fn tops_onliness(ex: &mut Explorer) -> Result<Option<Witness>> {
    let c = ex.classes.len();
    for k in 1..=ex.bounds.n_max {
        let societies = ex.societies(k, ex.anonymous);
        ex.charge(societies.len(), c, k, ex.anonymous)?;
        for society in &societies {
            let mut seen: HashMap<Vec<Alternative>, (ClassProfile, Alternative)> = HashMap::new();
            for mut asg in Explorer::assignments(c, k, ex.anonymous) {
                if ex.anonymous {
                    // Align voters by top so equal top multisets give equal
                    // top vectors.
                    asg.sort_by_key(|g| (ex.classes.top(*g), *g));
                }
                let cp = zip(society, &asg);
                let a = ex.outcome(&cp)?;
                let tops: Vec<Alternative> = asg.iter().map(|g| ex.classes.top(*g)).collect();
                match seen.get(&tops) {
                    None => {
                        seen.insert(tops, (cp, a));
                    }
                    Some((first, b)) if *b != a => {
                        let base = ex.concrete(first, &[]);
                        let derived = ex.concrete(&cp, &[]);
                        ex.confirm(&base, *b)?;
                        ex.confirm(&derived, a)?;
                        return Ok(Some(Witness::Pair {
                            base,
                            derived,
                            voter: None,
                            base_outcome: *b,
                            derived_outcome: a,
                            relabeling: None,
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(None)
}

fn participation(ex: &mut Explorer) -> Result<Option<Witness>> {
    let c = ex.classes.len();
    for k in 2..=ex.bounds.n_max {
        let societies = ex.societies(k, ex.anonymous);
        ex.charge(societies.len(), c, k, ex.anonymous)?;
        for society in &societies {
            for asg in Explorer::assignments(c, k, ex.anonymous) {
                let cp = zip(society, &asg);
                let a = ex.outcome(&cp)?;
                for idx in 0..cp.len() {
                    let (i, g) = cp[idx];
                    let mut without = cp.clone();
                    without.remove(idx);
                    let b = ex.outcome(&without)?;
                    if a != b && ex.classes.can_prefer(g, b, a) {
                        let m = ex.classes.member_preferring(g, b, a);
                        let base = ex.concrete(&cp, &[(i, m)]);
                        let derived = base.without_voter(i)?;
                        ex.confirm(&base, a)?;
                        ex.confirm(&derived, b)?;
                        return Ok(Some(Witness::Pair {
                            base,
                            derived,
                            voter: Some(i),
                            base_outcome: a,
                            derived_outcome: b,
                            relabeling: None,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// FNP (clones of the deviating voter) or strong FNP (arbitrary ballots)
/// for the added ids.
fn fnp(ex: &mut Explorer, strong: bool) -> Result<Option<Witness>> {
    let c = ex.classes.len();
    for k in 1..=ex.bounds.n_max {
        let societies = ex.societies(k, ex.anonymous);
        ex.charge(societies.len(), c, k, ex.anonymous)?;
        for society in &societies {
            let clone_sets = ex.clone_sets(society, ex.anonymous);
            for asg in Explorer::assignments(c, k, ex.anonymous) {
                let cp = zip(society, &asg);
                let a = ex.outcome(&cp)?;
                for &(i, g) in &cp {
                    for extra in &clone_sets {
                        let fills: Box<dyn Iterator<Item = Vec<u32>>> = if strong {
                            Explorer::assignments(c, extra.len(), ex.anonymous)
                        } else {
                            Box::new(std::iter::once(vec![g; extra.len()]))
                        };
                        for fill in fills {
                            let bigger = merged(cp.clone(), zip(extra, &fill));
                            let b = ex.outcome(&bigger)?;
                            if a == b || !ex.classes.can_prefer(g, b, a) {
                                continue;
                            }
                            let m = ex.classes.member_preferring(g, b, a);
                            let base = ex.concrete(&cp, &[(i, m)]);
                            let mut overrides = vec![(i, m)];
                            if !strong {
                                overrides.extend(extra.iter().map(|j| (*j, m)));
                            }
                            let derived = ex.concrete(&bigger, &overrides);
                            ex.confirm(&base, a)?;
                            ex.confirm(&derived, b)?;
                            return Ok(Some(Witness::Pair {
                                base,
                                derived,
                                voter: Some(i),
                                base_outcome: a,
                                derived_outcome: b,
                                relabeling: None,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn neutrality(ex: &mut Explorer) -> Result<Option<Witness>> {
    let n = ex.rule.universe().len();
    let count: u128 = (1..=n as u128).product::<u128>() * ex.classes.prefs.len() as u128;
    if count > ex.bounds.cap as u128 {
        return Err(Error::UniverseTooLarge { count, cap: ex.bounds.cap });
    }
    let perms = AltPermutation::all(n).filter(|g| !g.is_identity()).map(|g| (g.clone(), Relabeling::Alternatives(g)));
    equivariance(ex, perms.collect())
}

fn object_neutrality(ex: &mut Explorer) -> Result<Option<Witness>> {
    let objects = ex.rule.universe().object_count().map_err(|_| Error::AxiomNotApplicable {
        axiom: Axiom::ObjectNeutrality,
        reason: "the universe is not a set of object subsets".into(),
    })?;
    let perms = ObjectPermutation::all(objects)
        .filter(|mu| !mu.is_identity())
        .map(|mu| (mu.induced(), Relabeling::Objects(mu)));
    equivariance(ex, perms.collect())
}

/// `γ(f(P_N)) = f(P_N^γ)` for each listed `γ`, over profiles whose image
/// stays in the domain.
fn equivariance(ex: &mut Explorer, perms: Vec<(AltPermutation, Relabeling)>) -> Result<Option<Witness>> {
    let index: HashMap<Preference, usize> = ex.classes.prefs.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    for (gamma, relabeling) in perms {
        // Joint groups: (group of P, group of P^γ), representative P.
        let mut ids: HashMap<(u32, u32), usize> = HashMap::new();
        let mut joint: Vec<(u32, u32, usize)> = Vec::new();
        for (p_idx, p) in ex.classes.prefs.iter().enumerate() {
            let Some(&q_idx) = index.get(&permute_alternatives(p, &gamma)?) else {
                continue;
            };
            let key = (ex.classes.class_of[p_idx], ex.classes.class_of[q_idx]);
            if let Entry::Vacant(e) = ids.entry(key) {
                e.insert(joint.len());
                joint.push((key.0, key.1, p_idx));
            }
        }
        let j = joint.len();
        for k in 1..=ex.bounds.n_max {
            let societies = ex.societies(k, ex.anonymous);
            ex.charge(societies.len(), j, k, ex.anonymous)?;
            for society in &societies {
                for asg in Explorer::assignments(j, k, ex.anonymous) {
                    let left: Vec<u32> = asg.iter().map(|g| joint[*g as usize].0).collect();
                    let right: Vec<u32> = asg.iter().map(|g| joint[*g as usize].1).collect();
                    let a = ex.outcome(&zip(society, &left))?;
                    let b = ex.outcome(&zip(society, &right))?;
                    if gamma.apply(a) == b {
                        continue;
                    }
                    let base = Profile::new(
                        society.iter().zip(&asg).map(|(i, g)| (*i, ex.classes.prefs[joint[*g as usize].2].clone())),
                    )?;
                    let derived = Profile::new(
                        base.iter()
                            .map(|(i, p)| Ok((i, permute_alternatives(p, &gamma)?)))
                            .collect::<Result<Vec<_>>>()?,
                    )?;
                    ex.confirm(&base, a)?;
                    ex.confirm(&derived, b)?;
                    return Ok(Some(Witness::Pair {
                        base,
                        derived,
                        voter: None,
                        base_outcome: a,
                        derived_outcome: b,
                        relabeling: Some(relabeling),
                    }));
                }
            }
        }
    }
    Ok(None)
}
