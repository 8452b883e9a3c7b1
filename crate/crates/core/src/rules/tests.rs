use std::collections::HashMap;

use itertools::Itertools;

use super::*;
use crate::error::Error;
use crate::prefcore::{
    canonical_separable, enumerate_linear_orders, enumerate_separable, Alternative, DomainSpec, ObjectSet, Preference,
    Profile, Universe, VoterId, DEFAULT_ENUMERATION_CAP,
};

fn set(u: &Universe, names: &[&str]) -> Alternative {
    u.set_of(names).unwrap()
}

fn rep(u: &Universe, top: Alternative) -> Preference {
    canonical_separable(u.object_count().unwrap(), top.into()).unwrap()
}

fn tops_profile(u: &Universe, tops: &[Alternative]) -> Profile {
    Profile::from_prefs(tops.iter().map(|t| rep(u, *t))).unwrap()
}

/// An order over `2^O` with `first` then `second` on top, the rest by mask.
fn with_top_two(u: &Universe, first: Alternative, second: Alternative) -> Preference {
    let mut order = vec![first, second];
    order.extend(u.alternatives().filter(|a| *a != first && *a != second));
    Preference::from_order(order).unwrap()
}

#[test]
fn unique_top_rule_on_the_quoted_profiles() {
    let u = Universe::subsets(3).unwrap();
    let f = f_star(&u).unwrap();
    let xy = set(&u, &["x", "y"]);
    let xyz = set(&u, &["x", "y", "z"]);
    assert_eq!(f.evaluate(&tops_profile(&u, &[xy, xyz])).unwrap(), set(&u, &["z"]));
    assert_eq!(f.evaluate(&tops_profile(&u, &[xyz])).unwrap(), xyz);
    let x = set(&u, &["x"]);
    assert_eq!(f.evaluate(&tops_profile(&u, &[x, x])).unwrap(), Alternative(0));
    // Counting distinct tops instead keeps the duplicated object.
    assert_eq!(f_star_distinct(&u).unwrap().evaluate(&tops_profile(&u, &[x, x])).unwrap(), x);
}

#[test]
fn order_max_and_its_object_relabeling() {
    let u = Universe::subsets(3).unwrap();
    let f = f_succ(&u, None).unwrap();
    let [x, y, z] = [set(&u, &["x"]), set(&u, &["y"]), set(&u, &["z"])];
    assert_eq!(f.evaluate(&tops_profile(&u, &[x, z])).unwrap(), x);
    assert_eq!(f.evaluate(&tops_profile(&u, &[z, y])).unwrap(), y);
    assert_eq!(f.evaluate(&tops_profile(&u, &[z])).unwrap(), z);
    let order = default_succ_order(3);
    assert_eq!(order[0], set(&u, &["x", "y", "z"]));
    assert_eq!(&order[4..7], &[x, y, z]);
}

#[test]
fn majority_rules_on_proof_profiles() {
    let u = Universe::subsets(3).unwrap();
    let s = set(&u, &["z"]);
    let sx = set(&u, &["x", "z"]);
    let sxy = set(&u, &["x", "y", "z"]);
    let gt = f_gt(&u).unwrap();
    let geq = f_geq(&u).unwrap();
    assert_eq!(gt.evaluate(&tops_profile(&u, &[s, sx])).unwrap(), s);
    assert_eq!(geq.evaluate(&tops_profile(&u, &[s, sx])).unwrap(), sx);
    assert_eq!(gt.evaluate(&tops_profile(&u, &[s, sx, sxy])).unwrap(), sx);
    let e = Alternative(0);
    assert_eq!(geq.evaluate(&tops_profile(&u, &[e, set(&u, &["x"]), set(&u, &["y"])])).unwrap(), e);
    assert_eq!(gt.evaluate(&tops_profile(&u, &[sx, sx])).unwrap(), sx);
    assert_eq!(geq.evaluate(&tops_profile(&u, &[sx])).unwrap(), sx);
}

#[test]
fn tilde_rule_reads_the_second_rank() {
    let u = Universe::subsets(2).unwrap();
    let f = f_tilde(&u).unwrap();
    let x = set(&u, &["x"]);
    let full = u.full_set().unwrap();
    let second = with_top_two(&u, x, full);
    // {x} > ∅ > {y} > {x,y}
    let bottom = Preference::from_order(vec![x, Alternative(0), set(&u, &["y"]), full]).unwrap();
    assert_eq!(bottom.bottom(), full);
    assert_eq!(f.evaluate(&Profile::from_prefs([second.clone(), second]).unwrap()).unwrap(), x);
    assert_eq!(f.evaluate(&Profile::from_prefs([bottom.clone(), bottom]).unwrap()).unwrap(), full);
}

#[test]
fn min_index_reads_the_least_id() {
    let u = Universe::subsets(3).unwrap();
    let f = rule_by_name("f_min", &u).unwrap();
    let (x, y) = (set(&u, &["x"]), set(&u, &["y"]));
    let v = |i| VoterId::new(i).unwrap();
    let p = Profile::new([(v(3), rep(&u, x)), (v(7), rep(&u, y))]).unwrap();
    assert_eq!(f.evaluate(&p).unwrap(), x);
    let relabeled = Profile::new([(v(9), rep(&u, x)), (v(7), rep(&u, y))]).unwrap();
    assert_eq!(f.evaluate(&relabeled).unwrap(), y);
}

#[test]
fn quotas_are_union_and_intersection_of_tops() {
    for objects in 2..=3 {
        let u = Universe::subsets(objects).unwrap();
        let one = quota(&u, Quota::One).unwrap();
        let all = quota(&u, Quota::Unanimous).unwrap();
        let alts: Vec<Alternative> = u.alternatives().collect();
        for n in 1..=3 {
            for tops in (0..n).map(|_| alts.iter().copied()).multi_cartesian_product() {
                let p = tops_profile(&u, &tops);
                let sets = tops.iter().map(|t| ObjectSet::from(*t));
                let union = sets.clone().fold(ObjectSet::EMPTY, ObjectSet::union);
                let inter = sets.fold(ObjectSet::full(objects), ObjectSet::intersection);
                assert_eq!(one.evaluate(&p).unwrap(), union.into());
                assert_eq!(all.evaluate(&p).unwrap(), inter.into());
            }
        }
    }
}

#[test]
fn majority_rules_ignore_duplicated_tops() {
    let u = Universe::subsets(2).unwrap();
    let sep = enumerate_separable(2, DEFAULT_ENUMERATION_CAP).unwrap();
    for rule in [f_gt(&u).unwrap(), f_geq(&u).unwrap()] {
        for n in 1..=3 {
            for prefs in (0..n).map(|_| sep.iter().cloned()).multi_cartesian_product() {
                let base = Profile::from_prefs(prefs).unwrap();
                let before = rule.evaluate(&base).unwrap();
                for extra in sep.iter().filter(|q| base.distinct_tops().contains(&q.top())) {
                    let bigger = base.with_voter(VoterId::new(n as u32 + 1).unwrap(), extra.clone()).unwrap();
                    assert_eq!(rule.evaluate(&bigger).unwrap(), before, "{} on {bigger:?}", rule.name());
                }
            }
        }
    }
}

#[test]
fn tops_only_rules_agree_on_equal_tops() {
    let u = Universe::subsets(2).unwrap();
    let all = enumerate_linear_orders(4, DEFAULT_ENUMERATION_CAP).unwrap();
    let rules = ["f_min", "f_star", "f_succ", "f_const", "ext:f_gt", "ext:f_geq", "ext:quota1"]
        .map(|n| rule_by_name(n, &u).unwrap());
    for rule in &rules {
        for n in 1..=2 {
            let mut seen: HashMap<Vec<Alternative>, Alternative> = HashMap::new();
            for prefs in (0..n).map(|_| all.iter().cloned()).multi_cartesian_product() {
                let p = Profile::from_prefs(prefs).unwrap();
                let out = rule.evaluate(&p).unwrap();
                assert_eq!(*seen.entry(p.tops()).or_insert(out), out, "{}", rule.name());
            }
        }
    }
}

#[test]
fn extension_matches_base_on_separable_profiles() {
    let u = Universe::subsets(2).unwrap();
    let sep = enumerate_separable(2, DEFAULT_ENUMERATION_CAP).unwrap();
    for base in [f_gt(&u).unwrap(), f_geq(&u).unwrap()] {
        let identity = tops_only_extension(&base, DomainSpec::separable(2).unwrap()).unwrap();
        let wide = tops_only_extension(&base, DomainSpec::universal(u.clone())).unwrap();
        for n in 1..=2 {
            for prefs in (0..n).map(|_| sep.iter().cloned()).multi_cartesian_product() {
                let p = Profile::from_prefs(prefs).unwrap();
                let out = base.evaluate(&p).unwrap();
                assert_eq!(identity.evaluate(&p).unwrap(), out);
                assert_eq!(wide.evaluate(&p).unwrap(), out);
            }
        }
    }
}

#[test]
fn extension_of_non_separable_ballot_uses_its_top() {
    let u = Universe::subsets(2).unwrap();
    let odd = Preference::from_order([1, 2, 0, 3].map(Alternative).to_vec()).unwrap();
    let base = f_gt(&u).unwrap();
    let ext = tops_only_extension(&base, DomainSpec::separable_plus(u.clone(), odd.clone()).unwrap()).unwrap();
    let y = set(&u, &["y"]);
    let p = Profile::from_prefs([odd, rep(&u, y)]).unwrap();
    assert_eq!(ext.evaluate(&p).unwrap(), base.evaluate(&tops_profile(&u, &p.tops())).unwrap());
    assert_eq!(ext.name(), "ext:f_gt");
    assert!(matches!(base.evaluate(&p), Err(Error::DomainViolation { voter: 1, .. })));
}

#[test]
fn registry_resolves_every_name() {
    let u = Universe::subsets(3).unwrap();
    for name in RULE_NAMES {
        let rule = rule_by_name(name, &u).unwrap();
        assert_eq!(rule.name(), name);
        assert_eq!(rule.descriptor()["name"], name);
    }
    assert!(matches!(rule_by_name("borda", &u), Err(Error::UnknownRule(_))));
    assert!(matches!(rule_by_name("ext:f_tilde", &u), Err(Error::NotTopsOnly(_))));
    let labels = Universe::with_alternatives(3).unwrap();
    assert!(rule_by_name("f_min", &labels).is_ok());
    assert!(rule_by_name("f_gt", &labels).is_err());
}

#[test]
fn evaluation_is_deterministic() {
    let u = Universe::subsets(3).unwrap();
    let p = tops_profile(&u, &[Alternative(3), Alternative(5), Alternative(6)]);
    for name in RULE_NAMES {
        let rule = rule_by_name(name, &u).unwrap();
        assert_eq!(rule.evaluate(&p).unwrap(), rule.evaluate(&p).unwrap());
    }
}

#[test]
fn table_rules_answer_only_tabulated_profiles() {
    let u = Universe::subsets(2).unwrap();
    let mut table = RuleTable::tops_function(DomainSpec::universal(u.clone()), Keying::Anonymous);
    let (x, y) = (set(&u, &["x"]), set(&u, &["y"]));
    table.set(&tops_profile(&u, &[y, x]), x).unwrap();
    let rule = table.into_rule("table");
    assert_eq!(rule.evaluate(&tops_profile(&u, &[x, y])).unwrap(), x);
    assert!(matches!(rule.evaluate(&tops_profile(&u, &[x])), Err(Error::OutsideRuleSupport { .. })));
    let json = rule.descriptor();
    assert_eq!(json["parameters"]["table"]["entries"][0]["outcome"], serde_json::json!(["x"]));
}
