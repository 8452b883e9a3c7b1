//! Exhaustive exploration of profiles up to the bounds, one representative
//! per group of preferences that the rule cannot tell apart.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use super::bounds::CheckBounds;
use crate::error::{Error, Result};
use crate::prefcore::{Alternative, Preference, Profile, VoterId};
use crate::rules::RuleSpec;

/// A profile over preference groups: `(voter, group)` in voter order.
pub(crate) type ClassProfile = Vec<(VoterId, u32)>;

/// Partition of the domain by `(top, view key)`.
pub(crate) struct Classes {
    pub prefs: Vec<Preference>,
    pub class_of: Vec<u32>,
    pub members: Vec<Vec<usize>>,
    /// `below[c][b]` has bit `a` set when some member of `c` ranks `b`
    /// strictly above `a`.
    below: Vec<Vec<u64>>,
}

impl Classes {
    fn build(rule: &RuleSpec, prefs: Vec<Preference>) -> Self {
        let view = rule.view();
        let n_alts = rule.universe().len();
        let mut ids: HashMap<(u8, u64), u32> = HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(prefs.len());
        for (i, p) in prefs.iter().enumerate() {
            let key = (p.top().0, view.key(p, i));
            let next = ids.len() as u32;
            let c = *ids.entry(key).or_insert(next);
            if c == next {
                members.push(Vec::new());
            }
            members[c as usize].push(i);
            class_of.push(c);
        }
        let below = members
            .iter()
            .map(|ms| {
                let mut rows = vec![0u64; n_alts];
                for m in ms {
                    for (b, row) in rows.iter_mut().enumerate() {
                        *row |= prefs[*m].below_mask(Alternative(b as u8));
                    }
                }
                rows
            })
            .collect();
        Classes { prefs, class_of, members, below }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn rep(&self, c: u32) -> usize {
        self.members[c as usize][0]
    }

    pub fn top(&self, c: u32) -> Alternative {
        self.prefs[self.rep(c)].top()
    }

    /// Whether some member of `c` strictly prefers `b` to `a`.
    pub fn can_prefer(&self, c: u32, b: Alternative, a: Alternative) -> bool {
        self.below[c as usize][b.index()] & a.bit() != 0
    }

    /// First member of `c` strictly preferring `b` to `a`.
    pub fn member_preferring(&self, c: u32, b: Alternative, a: Alternative) -> usize {
        *self.members[c as usize].iter().find(|m| self.prefs[**m].beats(b, a)).expect("caller checked can_prefer")
    }
}

pub(crate) struct Explorer<'r> {
    pub rule: &'r RuleSpec,
    pub bounds: &'r CheckBounds,
    pub classes: Classes,
    /// Societies collapse to one per size and assignments to multisets.
    pub anonymous: bool,
    memo: HashMap<ClassProfile, Alternative>,
    pub evaluations: u64,
    explored: u128,
}

impl<'r> Explorer<'r> {
    pub fn new(rule: &'r RuleSpec, bounds: &'r CheckBounds) -> Result<Self> {
        let prefs = rule.domain().enumerate(bounds.cap)?;
        Ok(Explorer {
            rule,
            bounds,
            classes: Classes::build(rule, prefs),
            anonymous: false,
            memo: HashMap::new(),
            evaluations: 0,
            explored: 0,
        })
    }

    /// `f` on the class profile, through representatives.
    pub fn outcome(&mut self, cp: &ClassProfile) -> Result<Alternative> {
        if let Some(a) = self.memo.get(cp) {
            return Ok(*a);
        }
        let profile = self.concrete(cp, &[]);
        let a = self.rule.evaluate_unchecked(&profile)?;
        self.evaluations += 1;
        self.memo.insert(cp.clone(), a);
        Ok(a)
    }

    /// Concrete profile from representatives, with some voters holding
    /// given domain preferences instead.
    pub fn concrete(&self, cp: &ClassProfile, overrides: &[(VoterId, usize)]) -> Profile {
        let ballots: BTreeMap<VoterId, Preference> = cp
            .iter()
            .map(|(i, c)| {
                let idx = overrides.iter().find(|(v, _)| v == i).map_or_else(|| self.classes.rep(*c), |(_, m)| *m);
                (*i, self.classes.prefs[idx].clone())
            })
            .collect();
        Profile::from_map_unchecked(ballots)
    }

    /// Re-evaluates a concrete witness profile and insists it matches the
    /// outcome computed through representatives.
    pub fn confirm(&self, profile: &Profile, expected: Alternative) -> Result<()> {
        let actual = self.rule.evaluate(profile)?;
        if actual != expected {
            return Err(Error::ViewContractViolated {
                rule: self.rule.name().to_string(),
                detail: format!("{profile:?} gives {actual:?}, its representative gives {expected:?}"),
            });
        }
        Ok(())
    }

    /// Societies of `size` drawn from the pool.
    pub fn societies(&self, size: usize, anonymous: bool) -> Vec<Vec<VoterId>> {
        let pool = &self.bounds.id_pool;
        if size > pool.len() {
            return Vec::new();
        }
        if anonymous {
            vec![pool[..size].to_vec()]
        } else {
            pool.iter().copied().combinations(size).collect()
        }
    }

    /// Group assignments to `size` voters: multisets when anonymous.
    pub fn assignments(classes: usize, size: usize, anonymous: bool) -> Box<dyn Iterator<Item = Vec<u32>>> {
        if size == 0 {
            return Box::new(std::iter::once(Vec::new()));
        }
        if anonymous {
            Box::new((0..classes as u32).combinations_with_replacement(size))
        } else {
            Box::new((0..size).map(|_| 0..classes as u32).multi_cartesian_product())
        }
    }

    fn assignment_count(classes: usize, size: usize, anonymous: bool) -> u128 {
        let c = classes as u128;
        let k = size as u128;
        if anonymous {
            (1..=k).fold(1u128, |acc, i| acc * (c + i - 1) / i)
        } else {
            c.pow(size as u32)
        }
    }

    /// Charges the exploration of `societies × assignments` profiles
    /// against the cap.
    pub fn charge(&mut self, societies: usize, classes: usize, size: usize, anonymous: bool) -> Result<()> {
        self.explored += societies as u128 * Self::assignment_count(classes, size, anonymous);
        if self.explored > self.bounds.cap as u128 {
            return Err(Error::UniverseTooLarge { count: self.explored, cap: self.bounds.cap });
        }
        Ok(())
    }

    /// Fresh-id sets for clones, disjoint from `society`.
    pub fn clone_sets(&self, society: &[VoterId], anonymous: bool) -> Vec<Vec<VoterId>> {
        let free: Vec<VoterId> = self.bounds.id_pool.iter().copied().filter(|i| !society.contains(i)).collect();
        let max = self.bounds.n_prime_max.min(free.len());
        if anonymous {
            (1..=max).map(|m| free[..m].to_vec()).collect()
        } else {
            (1..=max).flat_map(|m| free.iter().copied().combinations(m)).collect()
        }
    }
}

pub(crate) fn zip(society: &[VoterId], classes: &[u32]) -> ClassProfile {
    society.iter().copied().zip(classes.iter().copied()).collect()
}

pub(crate) fn merged(mut cp: ClassProfile, extra: impl IntoIterator<Item = (VoterId, u32)>) -> ClassProfile {
    cp.extend(extra);
    cp.sort_unstable();
    cp
}
