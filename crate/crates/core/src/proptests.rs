//! Property tests over the public types.

use proptest::prelude::*;

use crate::prefcore::codec::{profile_from_json, profile_to_json, ProfileFixture};
use crate::prefcore::{
    canonical_separable, is_separable_by_definition, is_separable_by_top, permute_alternatives, permute_objects,
    AltPermutation, Alternative, ObjectPermutation, ObjectSet, Preference, Profile, Universe, VoterId,
    VoterPermutation,
};
use crate::rules::{f_gt, quota, Quota};

fn order(n: usize) -> impl Strategy<Value = Preference> {
    Just((0..n as u8).map(Alternative).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|o| Preference::from_order(o).unwrap())
}

fn alt_perm(n: usize) -> impl Strategy<Value = AltPermutation> {
    Just((0..n as u8).map(Alternative).collect::<Vec<_>>()).prop_shuffle().prop_map(|o| AltPermutation::new(o).unwrap())
}

fn object_perm(objects: usize) -> impl Strategy<Value = ObjectPermutation> {
    Just((0..objects).collect::<Vec<_>>()).prop_shuffle().prop_map(|o| ObjectPermutation::new(o).unwrap())
}

/// Separable preferences with random tie-free orderings, not just the
/// canonical ones: rank by a random positive weight per object, signed by
/// membership in the top.
fn weighted_separable(objects: usize) -> impl Strategy<Value = Preference> {
    (0..1u32 << objects, prop::collection::vec(0u32..1000, objects)).prop_map(move |(top, w)| {
        let top = ObjectSet::from_mask(top);
        // powers of two make every subset sum distinct
        let weight = |o: usize| ((w[o] as i64) << 12) + (1 << o);
        let value = |s: u32| -> i64 {
            ObjectSet::from_mask(s).objects().map(|o| if top.contains(o) { weight(o) } else { -weight(o) }).sum()
        };
        let mut sets: Vec<u32> = (0..1u32 << objects).collect();
        sets.sort_by_key(|s| std::cmp::Reverse(value(*s)));
        Preference::from_order(sets.into_iter().map(|s| Alternative(s as u8)).collect()).unwrap()
    })
}

fn profile(n: usize, max_voters: usize) -> impl Strategy<Value = Profile> {
    prop::collection::btree_map(1u32..50, order(n), 1..=max_voters)
        .prop_map(|m| Profile::new(m.into_iter().map(|(i, p)| (VoterId::new(i).unwrap(), p))).unwrap())
}

fn separable_profile(objects: usize, max_voters: usize) -> impl Strategy<Value = Profile> {
    prop::collection::btree_map(1u32..50, weighted_separable(objects), 1..=max_voters)
        .prop_map(|m| Profile::new(m.into_iter().map(|(i, p)| (VoterId::new(i).unwrap(), p))).unwrap())
}

proptest! {
    #[test]
    fn preferences_are_strict_total_orders(p in order(8), a in 0u8..8, b in 0u8..8, c in 0u8..8) {
        let (a, b, c) = (Alternative(a), Alternative(b), Alternative(c));
        prop_assert!(!p.prefers(a, a).unwrap());
        if a != b {
            prop_assert!(p.prefers(a, b).unwrap() ^ p.prefers(b, a).unwrap());
        }
        if p.prefers(a, b).unwrap() && p.prefers(b, c).unwrap() {
            prop_assert!(p.prefers(a, c).unwrap());
        }
    }

    #[test]
    fn alternative_permutations_act_as_a_group(p in order(6), g in alt_perm(6), h in alt_perm(6)) {
        let gh = permute_alternatives(&permute_alternatives(&p, &h).unwrap(), &g).unwrap();
        prop_assert_eq!(&gh, &permute_alternatives(&p, &g.compose(&h)).unwrap());
        let back = permute_alternatives(&permute_alternatives(&p, &g).unwrap(), &g.inverse()).unwrap();
        prop_assert_eq!(back, p.clone());
        prop_assert_eq!(permute_alternatives(&p, &AltPermutation::identity(6)).unwrap(), p);
    }

    #[test]
    fn alternative_permutation_moves_ranks(p in order(6), g in alt_perm(6), a in 0u8..6) {
        let a = Alternative(a);
        let q = permute_alternatives(&p, &g).unwrap();
        prop_assert_eq!(q.rank(g.apply(a)), p.rank(a));
    }

    #[test]
    fn voter_permutations_act_as_a_group(p in profile(4, 5), cycle in Just((1u32..50).collect::<Vec<_>>()).prop_shuffle()) {
        let ids: Vec<VoterId> = (1..50).map(|i| VoterId::new(i).unwrap()).collect();
        let sigma = VoterPermutation::new(ids.iter().zip(&cycle).map(|(a, b)| (*a, VoterId::new(*b).unwrap()))).unwrap();
        let moved = p.permute_voters(&sigma);
        prop_assert_eq!(moved.len(), p.len());
        for (i, q) in p.iter() {
            prop_assert_eq!(moved.get(sigma.apply(i)), Some(q));
        }
        prop_assert_eq!(moved.permute_voters(&sigma.inverse()), p.clone());
        prop_assert_eq!(p.permute_voters(&sigma.compose(&sigma.inverse())), p);
    }

    #[test]
    fn separability_routes_agree_on_random_orders(p in order(8)) {
        prop_assert_eq!(is_separable_by_definition(&p).unwrap(), is_separable_by_top(&p).unwrap());
    }

    #[test]
    fn separability_routes_agree_on_separable_orders(p in weighted_separable(3)) {
        prop_assert!(is_separable_by_definition(&p).unwrap());
        prop_assert!(is_separable_by_top(&p).unwrap());
    }

    #[test]
    fn separable_is_closed_under_object_permutations(p in weighted_separable(3), mu in object_perm(3)) {
        let q = permute_objects(&p, &mu).unwrap();
        prop_assert!(is_separable_by_definition(&q).unwrap());
        prop_assert_eq!(ObjectSet::from(q.top()), mu.apply_set(ObjectSet::from(p.top())));
    }

    #[test]
    fn canonical_separable_has_the_requested_top(m in 0u32..8) {
        let p = canonical_separable(3, ObjectSet::from_mask(m)).unwrap();
        prop_assert!(is_separable_by_definition(&p).unwrap());
        prop_assert_eq!(p.top(), Alternative(m as u8));
    }

    #[test]
    fn profile_codec_round_trips(p in profile(8, 6)) {
        let u = Universe::subsets(3).unwrap();
        let v = profile_to_json(&u, &p);
        prop_assert_eq!(profile_from_json(&u, &v).unwrap(), p.clone());
        let fx = ProfileFixture { universe: u, profile: p };
        prop_assert_eq!(ProfileFixture::parse(&fx.to_json().to_string()).unwrap(), fx);
    }

    #[test]
    fn majority_rules_are_anonymous_and_neutral(p in separable_profile(3, 5), mu in object_perm(3)) {
        let u = Universe::subsets(3).unwrap();
        for rule in [f_gt(&u).unwrap(), quota(&u, Quota::One).unwrap(), quota(&u, Quota::Unanimous).unwrap()] {
            let out = ObjectSet::from(rule.evaluate(&p).unwrap());
            let relabeled = Profile::from_prefs(p.preferences().cloned()).unwrap();
            prop_assert_eq!(ObjectSet::from(rule.evaluate(&relabeled).unwrap()), out);
            let moved = p.map_preferences(|q| permute_objects(q, &mu).unwrap());
            prop_assert_eq!(ObjectSet::from(rule.evaluate(&moved).unwrap()), mu.apply_set(out));
        }
    }
}
