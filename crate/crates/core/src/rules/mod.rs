//! The rule catalog behind one evaluator contract, explicit rule tables,
//! and the tops-only extension.

mod catalog;
mod extension;
mod registry;
mod spec;
mod table;

pub use catalog::{
    default_succ_order, f_const, f_geq, f_gt, f_min, f_star, f_star_distinct, f_succ, f_tilde, quota, remark1_bottom,
    remark1_top, Quota,
};
pub use extension::tops_only_extension;
pub use registry::{independence_rules, rule_by_name, RULE_NAMES};
pub use spec::{RuleSpec, View};
pub use table::{Keying, RuleTable, TableKey, Token};

#[cfg(test)]
mod tests;
