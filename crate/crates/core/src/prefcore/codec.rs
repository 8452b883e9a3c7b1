//! JSON forms of alternatives, preferences and profiles.
//!
//! An alternative is its label in a labelled universe, or the array of its
//! object names (in universe order) in a subsets universe. A preference is
//! a best-first array of alternatives; a profile maps voter ids (as
//! strings) to preferences.

use serde_json::{json, Map, Value};

use super::alternative::{Alternative, ObjectSet, Universe};
use super::preference::Preference;
use super::profile::{Profile, VoterId};
use crate::error::{Error, Result};

fn bad(what: &str, v: &Value) -> Error {
    Error::Json(format!("expected {what}, found {v}"))
}

/// `{"objects": [...]}` or `{"alternatives": [...]}`.
pub fn universe_to_json(universe: &Universe) -> Value {
    match universe {
        Universe::Labels(l) => json!({ "alternatives": l.as_ref() }),
        Universe::Subsets(o) => json!({ "objects": o.as_ref() }),
    }
}

fn string_list(v: &Value) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| bad("an array of names", v))?
        .iter()
        .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("a name", s)))
        .collect()
}

/// Reads the universe from an object carrying `objects` or `alternatives`.
pub fn universe_from_json(v: &Value) -> Result<Universe> {
    let obj = v.as_object().ok_or_else(|| bad("an object", v))?;
    match (obj.get("objects"), obj.get("alternatives")) {
        (Some(o), None) => Universe::subsets_named(string_list(o)?),
        (None, Some(a)) => Universe::labels(string_list(a)?),
        _ => Err(Error::Json("exactly one of `objects` and `alternatives` is required".into())),
    }
}

pub fn alternative_to_json(universe: &Universe, alt: Alternative) -> Value {
    match universe {
        Universe::Labels(l) => Value::String(l[alt.index()].clone()),
        Universe::Subsets(o) => {
            Value::Array(ObjectSet::from(alt).objects().map(|i| Value::String(o[i].clone())).collect())
        }
    }
}

pub fn alternative_from_json(universe: &Universe, v: &Value) -> Result<Alternative> {
    match universe {
        Universe::Labels(_) => universe.label_index(v.as_str().ok_or_else(|| bad("a label", v))?),
        Universe::Subsets(_) => {
            let names = string_list(v)?;
            let mut set = ObjectSet::EMPTY;
            for n in &names {
                let o = universe.object_index(n)?;
                if set.contains(o) {
                    return Err(Error::Json(format!("object `{n}` listed twice")));
                }
                set = set.with(o);
            }
            Ok(set.into())
        }
    }
}

pub fn preference_to_json(universe: &Universe, pref: &Preference) -> Value {
    Value::Array(pref.order().iter().map(|a| alternative_to_json(universe, *a)).collect())
}

pub fn preference_from_json(universe: &Universe, v: &Value) -> Result<Preference> {
    let items = v.as_array().ok_or_else(|| bad("a best-first array", v))?;
    if items.len() != universe.len() {
        return Err(Error::NotALinearOrder(format!(
            "{} alternatives ranked, universe has {}",
            items.len(),
            universe.len()
        )));
    }
    let order = items.iter().map(|a| alternative_from_json(universe, a)).collect::<Result<Vec<_>>>()?;
    Preference::from_order(order)
}

pub fn profile_to_json(universe: &Universe, profile: &Profile) -> Value {
    let map: Map<String, Value> =
        profile.iter().map(|(i, p)| (i.to_string(), preference_to_json(universe, p))).collect();
    Value::Object(map)
}

pub fn profile_from_json(universe: &Universe, v: &Value) -> Result<Profile> {
    let obj = v.as_object().ok_or_else(|| bad("a map from voter ids to preferences", v))?;
    let mut entries = Vec::with_capacity(obj.len());
    for (id, pref) in obj {
        let raw: i64 = id.parse().map_err(|_| Error::Json(format!("voter id `{id}` is not an integer")))?;
        let voter = u32::try_from(raw).ok().and_then(|i| VoterId::new(i).ok()).ok_or(Error::InvalidVoterId(raw))?;
        entries.push((voter, preference_from_json(universe, pref)?));
    }
    Profile::new(entries)
}

/// A self-contained profile document: universe plus ballots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileFixture {
    pub universe: Universe,
    pub profile: Profile,
}

impl ProfileFixture {
    pub fn to_json(&self) -> Value {
        let mut v = universe_to_json(&self.universe);
        v["profile"] = profile_to_json(&self.universe, &self.profile);
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let universe = universe_from_json(v)?;
        let profile = v.get("profile").ok_or_else(|| Error::Json("missing `profile`".into()))?;
        let profile = profile_from_json(&universe, profile)?;
        Ok(ProfileFixture { universe, profile })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}
