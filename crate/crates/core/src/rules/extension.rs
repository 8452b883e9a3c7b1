use serde_json::json;

use super::spec::{RuleSpec, View};
use crate::error::{Error, Result};
use crate::prefcore::{canonical_separable, DomainSpec, ObjectSet, Preference};

/// Extends a tops-only rule on `𝒮` to a larger domain by evaluating it on
/// canonical separable representatives with the same tops.
pub fn tops_only_extension(base: &RuleSpec, ext_domain: DomainSpec) -> Result<RuleSpec> {
    if !matches!(base.view(), View::Top | View::Nothing) {
        return Err(Error::NotTopsOnly(base.name().to_string()));
    }
    if ext_domain.universe() != base.universe() {
        return Err(Error::MixedUniverse);
    }
    let objects = base.universe().object_count()?;
    let reps: Vec<Preference> = (0..1u32 << objects)
        .map(|mask| canonical_separable(objects, ObjectSet::from_mask(mask)))
        .collect::<Result<_>>()?;
    let inner = base.clone();
    let name = format!("ext:{}", base.name());
    let params = json!({ "base": base.descriptor() });
    Ok(RuleSpec::new(name, ext_domain, View::Top, move |p| {
        let separable = p.map_preferences(|q| reps[q.top().index()].clone());
        inner.evaluate_unchecked(&separable)
    })
    .with_params(params))
}
