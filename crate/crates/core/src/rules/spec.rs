use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::axioms::Axiom;
use crate::error::{Error, Result};
use crate::prefcore::codec::{preference_to_json, universe_to_json};
use crate::prefcore::{Alternative, DomainKind, DomainSpec, Preference, Profile, Universe};

/// How much of each ballot a rule reads, besides the voter's id.
///
/// Checkers group preferences that agree on the view and evaluate one
/// representative per group, so a rule must never read more than it
/// declares. Witnesses are re-evaluated on concrete profiles, which turns a
/// wrong declaration into [`Error::ViewContractViolated`] instead of a
/// silent false verdict.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum View {
    /// The whole order.
    Full,
    /// Only the top alternative.
    Top,
    /// Only the bottom alternative.
    Bottom,
    /// The top, and whether the given alternative is ranked second.
    TopAndSecondIs(Alternative),
    /// Nothing at all (constant rules).
    Nothing,
}

impl View {
    /// Key of `pref` under this view. `index` distinguishes preferences under
    /// [`View::Full`] and must be unique per preference.
    pub fn key(self, pref: &Preference, index: usize) -> u64 {
        match self {
            View::Full => index as u64,
            View::Top => pref.top().0 as u64,
            View::Bottom => pref.bottom().0 as u64,
            View::TopAndSecondIs(a) => (pref.top().0 as u64) << 1 | (pref.at_rank(2) == Some(a)) as u64,
            View::Nothing => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            View::Full => "full",
            View::Top => "top",
            View::Bottom => "bottom",
            View::TopAndSecondIs(_) => "top+second",
            View::Nothing => "nothing",
        }
    }
}

type Evaluator = dyn Fn(&Profile) -> Result<Alternative> + Send + Sync;

/// A named rule `f : 𝒟^𝒩 → A` on a declared domain.
#[derive(Clone)]
pub struct RuleSpec {
    name: String,
    domain: DomainSpec,
    view: View,
    params: Value,
    expected: BTreeMap<Axiom, bool>,
    eval: Arc<Evaluator>,
}

impl RuleSpec {
    pub fn new<F>(name: impl Into<String>, domain: DomainSpec, view: View, eval: F) -> Self
    where
        F: Fn(&Profile) -> Result<Alternative> + Send + Sync + 'static,
    {
        RuleSpec {
            name: name.into(),
            domain,
            view,
            params: Value::Object(Default::default()),
            expected: BTreeMap::new(),
            eval: Arc::new(eval),
        }
    }

    pub fn with_params(mut self, params: Value) -> Self {
        self.params = params;
        self
    }

    /// Records the axioms the rule is claimed to satisfy (`true`) or
    /// violate (`false`).
    pub fn with_expected<I: IntoIterator<Item = (Axiom, bool)>>(mut self, expected: I) -> Self {
        self.expected = expected.into_iter().collect();
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn universe(&self) -> &Universe {
        self.domain.universe()
    }

    pub fn view(&self) -> View {
        self.view
    }

    pub fn params(&self) -> &Value {
        &self.params
    }

    pub fn expected(&self) -> &BTreeMap<Axiom, bool> {
        &self.expected
    }

    /// `f(P_N)`, after checking every ballot lies in the rule's domain.
    pub fn evaluate(&self, profile: &Profile) -> Result<Alternative> {
        for (voter, pref) in profile.iter() {
            if !self.domain.contains(pref)? {
                return Err(Error::DomainViolation { voter: voter.get(), domain: self.domain.to_string() });
            }
        }
        self.evaluate_unchecked(profile)
    }

    /// `f(P_N)` for a profile already known to lie in the domain.
    pub(crate) fn evaluate_unchecked(&self, profile: &Profile) -> Result<Alternative> {
        let out = (self.eval)(profile)?;
        self.universe().check(out)
    }

    /// JSON descriptor: name, domain, view and parameters.
    pub fn descriptor(&self) -> Value {
        let mut domain = universe_to_json(self.universe());
        domain["kind"] = Value::String(self.domain.name().into());
        if let DomainKind::SeparablePlus(extra) = self.domain.kind() {
            domain["extra"] = preference_to_json(self.universe(), extra);
        }
        json!({
            "name": self.name,
            "domain": domain,
            "view": self.view.name(),
            "parameters": self.params,
        })
    }
}

impl fmt::Debug for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleSpec")
            .field("name", &self.name)
            .field("domain", &self.domain.to_string())
            .field("view", &self.view)
            .finish()
    }
}
