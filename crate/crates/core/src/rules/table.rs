use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::{json, Value};

use super::spec::{RuleSpec, View};
use crate::error::{Error, Result};
use crate::prefcore::codec::{alternative_to_json, preference_to_json};
use crate::prefcore::{Alternative, DomainSpec, Preference, Profile};

/// What a table reads from each ballot.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Token {
    /// The top alternative: a tops function.
    Top,
    /// The whole preference.
    Preference,
}

/// Whether a table sees voter ids.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Keying {
    /// Keys are sorted multisets of tokens.
    Anonymous,
    /// Keys are `(voter, token)` lists in voter order.
    Labeled,
}

/// Table key: `(voter id, token)` pairs; the id is 0 for anonymous tables.
pub type TableKey = Vec<(u32, u16)>;

/// A finite rule given by an explicit table, as produced by the
/// constraint search or by exhaustive rule-space scans.
#[derive(Clone, Debug)]
pub struct RuleTable {
    domain: DomainSpec,
    token: Token,
    keying: Keying,
    prefs: Arc<Vec<Preference>>,
    index: Arc<HashMap<Preference, u16>>,
    entries: BTreeMap<TableKey, Alternative>,
}

impl RuleTable {
    pub fn new(domain: DomainSpec, token: Token, keying: Keying, cap: u64) -> Result<Self> {
        let prefs = if token == Token::Preference { domain.enumerate(cap)? } else { Vec::new() };
        let index = prefs.iter().enumerate().map(|(i, p)| (p.clone(), i as u16)).collect();
        Ok(RuleTable {
            domain,
            token,
            keying,
            prefs: Arc::new(prefs),
            index: Arc::new(index),
            entries: BTreeMap::new(),
        })
    }

    /// A tops function `(tops) ↦ alternative`.
    pub fn tops_function(domain: DomainSpec, keying: Keying) -> Self {
        Self::new(domain, Token::Top, keying, 0).expect("tops tables do not enumerate the domain")
    }

    pub fn token(&self) -> Token {
        self.token
    }

    pub fn keying(&self) -> Keying {
        self.keying
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    /// The domain listing that [`Token::Preference`] indices refer to.
    pub fn preferences(&self) -> &[Preference] {
        &self.prefs
    }

    pub fn token_of(&self, pref: &Preference) -> Result<u16> {
        match self.token {
            Token::Top => Ok(pref.top().0 as u16),
            Token::Preference => self
                .index
                .get(pref)
                .copied()
                .ok_or_else(|| Error::DomainViolation { voter: 0, domain: self.domain.to_string() }),
        }
    }

    pub fn key(&self, profile: &Profile) -> Result<TableKey> {
        let mut key = Vec::with_capacity(profile.len());
        for (i, p) in profile.iter() {
            let id = if self.keying == Keying::Labeled { i.get() } else { 0 };
            key.push((id, self.token_of(p)?));
        }
        if self.keying == Keying::Anonymous {
            key.sort_unstable();
        }
        Ok(key)
    }

    pub fn insert(&mut self, key: TableKey, outcome: Alternative) {
        self.entries.insert(key, outcome);
    }

    pub fn set(&mut self, profile: &Profile, outcome: Alternative) -> Result<()> {
        let key = self.key(profile)?;
        self.insert(key, outcome);
        Ok(())
    }

    pub fn get(&self, profile: &Profile) -> Result<Option<Alternative>> {
        Ok(self.entries.get(&self.key(profile)?).copied())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TableKey, Alternative)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    /// The table as a rule. Profiles outside the table are errors.
    pub fn into_rule(self, name: impl Into<String>) -> RuleSpec {
        let name = name.into();
        let view = match self.token {
            Token::Top => View::Top,
            Token::Preference => View::Full,
        };
        let params = json!({ "table": self.to_json() });
        let rule_name = name.clone();
        RuleSpec::new(name, self.domain.clone(), view, move |p: &Profile| {
            self.get(p)?.ok_or_else(|| Error::OutsideRuleSupport {
                rule: rule_name.clone(),
                reason: format!("no table entry for a society of {} voters", p.len()),
            })
        })
        .with_params(params)
    }

    fn token_json(&self, token: u16) -> Value {
        let u = self.domain.universe();
        match self.token {
            Token::Top => alternative_to_json(u, Alternative(token as u8)),
            Token::Preference => preference_to_json(u, &self.prefs[token as usize]),
        }
    }

    pub fn to_json(&self) -> Value {
        let u = self.domain.universe();
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(key, out)| {
                let outcome = alternative_to_json(u, *out);
                match self.keying {
                    Keying::Anonymous => json!({
                        "ballots": key.iter().map(|(_, t)| self.token_json(*t)).collect::<Vec<_>>(),
                        "outcome": outcome,
                    }),
                    Keying::Labeled => json!({
                        "ballots": key.iter().map(|(i, t)| json!([i, self.token_json(*t)])).collect::<Vec<_>>(),
                        "outcome": outcome,
                    }),
                }
            })
            .collect();
        json!({
            "token": match self.token { Token::Top => "top", Token::Preference => "preference" },
            "keying": match self.keying { Keying::Anonymous => "anonymous", Keying::Labeled => "labeled" },
            "entries": entries,
        })
    }
}
