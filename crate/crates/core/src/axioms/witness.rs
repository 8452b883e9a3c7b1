use itertools::Itertools;
use serde_json::{json, Value};

use super::Axiom;
use crate::error::{Error, Result};
use crate::prefcore::codec::{alternative_from_json, alternative_to_json, profile_from_json, profile_to_json};
use crate::prefcore::{
    permute_alternatives, AltPermutation, Alternative, ObjectPermutation, Profile, Universe, VoterId, VoterPermutation,
};
use crate::rules::RuleSpec;

/// The relabeling involved in a symmetry witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relabeling {
    Voters(VoterPermutation),
    Alternatives(AltPermutation),
    Objects(ObjectPermutation),
}

/// A counterexample, stored so it can be re-checked from scratch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// No profile of `society` yields `missing`.
    Unattained { society: Vec<VoterId>, missing: Alternative },
    /// Two related profiles whose outcomes break the axiom.
    Pair {
        base: Profile,
        derived: Profile,
        /// The voter who gains, for the incentive axioms.
        voter: Option<VoterId>,
        base_outcome: Alternative,
        derived_outcome: Alternative,
        relabeling: Option<Relabeling>,
    },
}

impl Witness {
    /// Re-evaluates the rule on the stored data and confirms the violation.
    ///
    /// Returns `Ok(false)` when the stored data do not witness a violation
    /// of `axiom`, and an error when the rule cannot be evaluated on them.
    pub fn replay(&self, rule: &RuleSpec, axiom: Axiom, cap: u64) -> Result<bool> {
        match self {
            Witness::Unattained { society, missing } => {
                if axiom != Axiom::Ontoness || society.is_empty() {
                    return Ok(false);
                }
                replay_unattained(rule, society, *missing, cap)
            }
            Witness::Pair { base, derived, voter, base_outcome, derived_outcome, relabeling } => {
                if rule.evaluate(base)? != *base_outcome || rule.evaluate(derived)? != *derived_outcome {
                    return Ok(false);
                }
                let (a, b) = (*base_outcome, *derived_outcome);
                let gains = |v: &Option<VoterId>| -> Result<Option<VoterId>> {
                    let Some(v) = *v else { return Ok(None) };
                    match base.get(v) {
                        Some(p) if p.prefers(b, a)? => Ok(Some(v)),
                        _ => Ok(None),
                    }
                };
                Ok(match axiom {
                    Axiom::Ontoness => false,
                    Axiom::TopsOnliness => {
                        base.society() == derived.society() && base.tops() == derived.tops() && a != b
                    }
                    Axiom::Participation => match gains(voter)? {
                        Some(v) => base.len() >= 2 && base.without_voter(v)? == *derived,
                        None => false,
                    },
                    Axiom::Fnp | Axiom::StrongFnp => match gains(voter)? {
                        Some(v) => {
                            let held = base.get(v).expect("voter checked above");
                            let extends = derived.len() > base.len()
                                && base.iter().all(|(i, p)| derived.get(i) == Some(p))
                                && (axiom == Axiom::StrongFnp
                                    || derived.iter().filter(|(i, _)| !base.contains(*i)).all(|(_, p)| p == held));
                            extends
                        }
                        None => false,
                    },
                    Axiom::Anonymity => match relabeling {
                        Some(Relabeling::Voters(sigma)) => base.permute_voters(sigma) == *derived && a != b,
                        _ => false,
                    },
                    Axiom::Neutrality | Axiom::ObjectNeutrality => {
                        let gamma = match (axiom, relabeling) {
                            (Axiom::Neutrality, Some(Relabeling::Alternatives(g))) => g.clone(),
                            (Axiom::ObjectNeutrality, Some(Relabeling::Objects(mu))) => {
                                if mu.images().len() != rule.universe().object_count()? {
                                    return Ok(false);
                                }
                                mu.induced()
                            }
                            _ => return Ok(false),
                        };
                        if gamma.len() != rule.universe().len() {
                            return Ok(false);
                        }
                        let mut mapped = Vec::with_capacity(base.len());
                        for (i, p) in base.iter() {
                            mapped.push((i, permute_alternatives(p, &gamma)?));
                        }
                        Profile::new(mapped)? == *derived && gamma.apply(a) != b
                    }
                })
            }
        }
    }

    pub fn to_json(&self, universe: &Universe) -> Value {
        match self {
            Witness::Unattained { society, missing } => json!({
                "kind": "unattained",
                "society": society.iter().map(|i| i.get()).collect::<Vec<_>>(),
                "missing": alternative_to_json(universe, *missing),
            }),
            Witness::Pair { base, derived, voter, base_outcome, derived_outcome, relabeling } => {
                let mut v = json!({
                    "kind": "pair",
                    "base": profile_to_json(universe, base),
                    "derived": profile_to_json(universe, derived),
                    "base_outcome": alternative_to_json(universe, *base_outcome),
                    "derived_outcome": alternative_to_json(universe, *derived_outcome),
                });
                if let Some(i) = voter {
                    v["voter"] = json!(i.get());
                }
                if let Some(r) = relabeling {
                    v["relabeling"] = relabeling_to_json(universe, r);
                }
                v
            }
        }
    }

    pub fn from_json(universe: &Universe, v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Json(format!("witness is missing `{k}`")));
        match v.get("kind").and_then(Value::as_str) {
            Some("unattained") => Ok(Witness::Unattained {
                society: ids_from_json(field("society")?)?,
                missing: alternative_from_json(universe, field("missing")?)?,
            }),
            Some("pair") => Ok(Witness::Pair {
                base: profile_from_json(universe, field("base")?)?,
                derived: profile_from_json(universe, field("derived")?)?,
                voter: match v.get("voter") {
                    Some(i) => Some(id_from_json(i)?),
                    None => None,
                },
                base_outcome: alternative_from_json(universe, field("base_outcome")?)?,
                derived_outcome: alternative_from_json(universe, field("derived_outcome")?)?,
                relabeling: match v.get("relabeling") {
                    Some(r) => Some(relabeling_from_json(universe, r)?),
                    None => None,
                },
            }),
            _ => Err(Error::Json("witness `kind` must be `unattained` or `pair`".into())),
        }
    }
}

fn replay_unattained(rule: &RuleSpec, society: &[VoterId], missing: Alternative, cap: u64) -> Result<bool> {
    if !rule.universe().contains(missing) {
        return Ok(false);
    }
    let prefs = rule.domain().enumerate(cap)?;
    let count = (prefs.len() as u128).pow(society.len() as u32);
    if count > cap as u128 {
        return Err(Error::UniverseTooLarge { count, cap });
    }
    for ballots in society.iter().map(|_| prefs.iter().cloned()).multi_cartesian_product() {
        let p = Profile::new(society.iter().copied().zip(ballots))?;
        if rule.evaluate(&p)? == missing {
            return Ok(false);
        }
    }
    Ok(true)
}

fn id_from_json(v: &Value) -> Result<VoterId> {
    let raw = v.as_i64().ok_or_else(|| Error::Json(format!("expected a voter id, found {v}")))?;
    u32::try_from(raw).ok().and_then(|i| VoterId::new(i).ok()).ok_or(Error::InvalidVoterId(raw))
}

fn ids_from_json(v: &Value) -> Result<Vec<VoterId>> {
    v.as_array()
        .ok_or_else(|| Error::Json(format!("expected voter ids, found {v}")))?
        .iter()
        .map(id_from_json)
        .collect()
}

fn relabeling_to_json(universe: &Universe, r: &Relabeling) -> Value {
    match r {
        Relabeling::Voters(sigma) => {
            json!({ "voters": sigma.pairs().map(|(a, b)| [a.get(), b.get()]).collect::<Vec<_>>() })
        }
        Relabeling::Alternatives(g) => json!({
            "alternatives": universe
                .alternatives()
                .map(|a| json!([alternative_to_json(universe, a), alternative_to_json(universe, g.apply(a))]))
                .collect::<Vec<_>>()
        }),
        Relabeling::Objects(mu) => {
            let names = universe.objects().unwrap_or_default();
            json!({
                "objects": mu
                    .images()
                    .iter()
                    .enumerate()
                    .map(|(o, img)| [names[o].clone(), names[*img].clone()])
                    .collect::<Vec<_>>()
            })
        }
    }
}

fn relabeling_from_json(universe: &Universe, v: &Value) -> Result<Relabeling> {
    let pairs = |k: &str| -> Result<Vec<(Value, Value)>> {
        let list = v[k].as_array().ok_or_else(|| Error::Json(format!("`{k}` must be a list of pairs")))?;
        list.iter()
            .map(|p| match p.as_array().map(Vec::as_slice) {
                Some([a, b]) => Ok((a.clone(), b.clone())),
                _ => Err(Error::Json(format!("expected a pair, found {p}"))),
            })
            .collect()
    };
    if v.get("voters").is_some() {
        let mapped = pairs("voters")?
            .into_iter()
            .map(|(a, b)| Ok((id_from_json(&a)?, id_from_json(&b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Relabeling::Voters(VoterPermutation::new(mapped)?))
    } else if v.get("alternatives").is_some() {
        let mut image: Vec<Option<Alternative>> = vec![None; universe.len()];
        for (a, b) in pairs("alternatives")? {
            let a = alternative_from_json(universe, &a)?;
            image[a.index()] = Some(alternative_from_json(universe, &b)?);
        }
        let image = image.into_iter().collect::<Option<Vec<_>>>();
        Ok(Relabeling::Alternatives(AltPermutation::new(
            image.ok_or_else(|| Error::NonBijective("alternative relabeling is partial".into()))?,
        )?))
    } else if v.get("objects").is_some() {
        let k = universe.object_count()?;
        let mut image: Vec<Option<usize>> = vec![None; k];
        for (a, b) in pairs("objects")? {
            let name = |x: &Value| x.as_str().map(str::to_string).ok_or_else(|| Error::Json(format!("bad object {x}")));
            image[universe.object_index(&name(&a)?)?] = Some(universe.object_index(&name(&b)?)?);
        }
        let image = image.into_iter().collect::<Option<Vec<_>>>();
        Ok(Relabeling::Objects(ObjectPermutation::new(
            image.ok_or_else(|| Error::NonBijective("object relabeling is partial".into()))?,
        )?))
    } else {
        Err(Error::Json("unknown relabeling".into()))
    }
}
