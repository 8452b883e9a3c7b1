use super::catalog::{
    f_const, f_geq, f_gt, f_min, f_star, f_star_distinct, f_succ, f_tilde, quota, remark1_bottom, remark1_top, Quota,
};
use super::extension::tops_only_extension;
use super::spec::RuleSpec;
use crate::error::{Error, Result};
use crate::prefcore::{DomainSpec, Universe};

/// Names accepted by [`rule_by_name`], besides `ext:<base>`.
pub const RULE_NAMES: [&str; 12] = [
    "f_gt",
    "f_geq",
    "f_min",
    "f_star",
    "f_succ",
    "f_const",
    "f_tilde",
    "quota1",
    "quota_unanimous",
    "f_star_distinct",
    "remark1_top",
    "remark1_bottom",
];

/// Looks up a catalog rule over `universe`. `ext:<base>` extends a tops-only
/// base rule to every order over the universe.
pub fn rule_by_name(name: &str, universe: &Universe) -> Result<RuleSpec> {
    if let Some(base) = name.strip_prefix("ext:") {
        let base = rule_by_name(base, universe)?;
        return tops_only_extension(&base, DomainSpec::universal(universe.clone()));
    }
    let universal = DomainSpec::universal(universe.clone());
    match name {
        "f_gt" => f_gt(universe),
        "f_geq" => f_geq(universe),
        "f_min" => Ok(f_min(universal)),
        "f_star" => f_star(universe),
        "f_star_distinct" => f_star_distinct(universe),
        "f_succ" => f_succ(universe, None),
        "f_const" => f_const(universe),
        "f_tilde" => f_tilde(universe),
        "quota1" => quota(universe, Quota::One),
        "quota_unanimous" => quota(universe, Quota::Unanimous),
        "remark1_top" => Ok(remark1_top(universal)),
        "remark1_bottom" => Ok(remark1_bottom(universal)),
        _ => Err(Error::UnknownRule(name.to_string())),
    }
}

/// The five rules separating the impossibility axioms, in table order.
pub fn independence_rules(universe: &Universe) -> Result<Vec<RuleSpec>> {
    ["f_const", "f_tilde", "f_min", "f_star", "f_succ"].iter().map(|n| rule_by_name(n, universe)).collect()
}
