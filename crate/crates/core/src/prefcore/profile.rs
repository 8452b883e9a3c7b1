use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::alternative::Alternative;
use super::permutation::VoterPermutation;
use super::preference::Preference;
use crate::error::{Error, Result};

/// A voter identity, a positive integer.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VoterId(u32);

impl VoterId {
    pub fn new(id: u32) -> Result<Self> {
        if id == 0 {
            return Err(Error::InvalidVoterId(0));
        }
        Ok(VoterId(id))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `1..=n` as voter ids.
    pub fn range(n: usize) -> Vec<VoterId> {
        (1..=n as u32).map(VoterId).collect()
    }
}

impl fmt::Display for VoterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `P_N`: one preference per voter of a non-empty society `N`.
///
/// Profiles are values; the derivation methods return new profiles and
/// leave `self` untouched.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    ballots: BTreeMap<VoterId, Preference>,
}

impl Profile {
    pub fn new<I: IntoIterator<Item = (VoterId, Preference)>>(entries: I) -> Result<Self> {
        let mut ballots = BTreeMap::new();
        let mut len = None;
        for (id, pref) in entries {
            if *len.get_or_insert(pref.len()) != pref.len() {
                return Err(Error::MixedUniverse);
            }
            if ballots.insert(id, pref).is_some() {
                return Err(Error::DuplicateVoter(id.get()));
            }
        }
        if ballots.is_empty() {
            return Err(Error::EmptySociety);
        }
        Ok(Profile { ballots })
    }

    /// Voters `1..=n` holding the given preferences in order.
    pub fn from_prefs<I: IntoIterator<Item = Preference>>(prefs: I) -> Result<Self> {
        Profile::new(prefs.into_iter().enumerate().map(|(i, p)| (VoterId(i as u32 + 1), p)))
    }

    pub(crate) fn from_map_unchecked(ballots: BTreeMap<VoterId, Preference>) -> Self {
        debug_assert!(!ballots.is_empty());
        Profile { ballots }
    }

    pub fn len(&self) -> usize {
        self.ballots.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of alternatives every preference ranges over.
    pub fn alternative_count(&self) -> usize {
        self.ballots.values().next().map(Preference::len).unwrap_or(0)
    }

    pub fn society(&self) -> BTreeSet<VoterId> {
        self.ballots.keys().copied().collect()
    }

    pub fn voters(&self) -> impl Iterator<Item = VoterId> + '_ {
        self.ballots.keys().copied()
    }

    pub fn get(&self, voter: VoterId) -> Option<&Preference> {
        self.ballots.get(&voter)
    }

    pub fn contains(&self, voter: VoterId) -> bool {
        self.ballots.contains_key(&voter)
    }

    /// Ballots in ascending voter order.
    pub fn iter(&self) -> impl Iterator<Item = (VoterId, &Preference)> {
        self.ballots.iter().map(|(i, p)| (*i, p))
    }

    pub fn preferences(&self) -> impl Iterator<Item = &Preference> {
        self.ballots.values()
    }

    /// Tops in ascending voter order.
    pub fn tops(&self) -> Vec<Alternative> {
        self.ballots.values().map(Preference::top).collect()
    }

    /// `t(P_N)`: the distinct tops, ascending.
    pub fn distinct_tops(&self) -> BTreeSet<Alternative> {
        self.ballots.values().map(Preference::top).collect()
    }

    pub fn min_voter(&self) -> VoterId {
        *self.ballots.keys().next().expect("profiles are non-empty")
    }

    /// `P_{N ∪ {voter}}`.
    pub fn with_voter(&self, voter: VoterId, pref: Preference) -> Result<Profile> {
        if self.contains(voter) {
            return Err(Error::DuplicateVoter(voter.get()));
        }
        if pref.len() != self.alternative_count() {
            return Err(Error::MixedUniverse);
        }
        let mut ballots = self.ballots.clone();
        ballots.insert(voter, pref);
        Ok(Profile { ballots })
    }

    /// `P_{N ∖ {voter}}`.
    pub fn without_voter(&self, voter: VoterId) -> Result<Profile> {
        if !self.contains(voter) {
            return Err(Error::UnknownVoter(voter.get()));
        }
        if self.len() == 1 {
            return Err(Error::LastVoterRemoval);
        }
        let mut ballots = self.ballots.clone();
        ballots.remove(&voter);
        Ok(Profile { ballots })
    }

    /// Replaces one voter's preference.
    pub fn replace(&self, voter: VoterId, pref: Preference) -> Result<Profile> {
        if !self.contains(voter) {
            return Err(Error::UnknownVoter(voter.get()));
        }
        let mut ballots = self.ballots.clone();
        ballots.insert(voter, pref);
        Ok(Profile { ballots })
    }

    /// Relabels voters: `σ(i)` holds what `i` held.
    pub fn permute_voters(&self, sigma: &VoterPermutation) -> Profile {
        let ballots = self.ballots.iter().map(|(i, p)| (sigma.apply(*i), p.clone())).collect();
        Profile { ballots }
    }

    /// Applies `f` to every preference.
    pub fn map_preferences<F: FnMut(&Preference) -> Preference>(&self, mut f: F) -> Profile {
        Profile { ballots: self.ballots.iter().map(|(i, p)| (*i, f(p))).collect() }
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.ballots.iter().map(|(i, p)| (i.0, p))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefcore::enumerate_linear_orders;

    fn prefs() -> Vec<Preference> {
        enumerate_linear_orders(3, 100).unwrap()
    }

    #[test]
    fn add_then_remove_restores_profile() {
        let p = prefs();
        let base = Profile::from_prefs([p[0].clone(), p[3].clone()]).unwrap();
        let star = VoterId::new(9).unwrap();
        let bigger = base.with_voter(star, p[5].clone()).unwrap();
        assert_eq!(bigger.len(), 3);
        assert_eq!(base.len(), 2);
        assert_eq!(bigger.without_voter(star).unwrap(), base);
    }

    #[test]
    fn last_voter_cannot_leave() {
        let single = Profile::from_prefs([prefs()[0].clone()]).unwrap();
        assert!(matches!(single.without_voter(VoterId(1)), Err(Error::LastVoterRemoval)));
    }

    #[test]
    fn id_collision_rejected() {
        let p = prefs();
        let base = Profile::from_prefs([p[0].clone()]).unwrap();
        assert!(matches!(base.with_voter(VoterId(1), p[1].clone()), Err(Error::DuplicateVoter(1))));
    }

    #[test]
    fn empty_and_mixed_profiles_rejected() {
        assert!(matches!(Profile::new(Vec::new()), Err(Error::EmptySociety)));
        let two = enumerate_linear_orders(2, 10).unwrap();
        assert!(matches!(Profile::from_prefs([prefs()[0].clone(), two[0].clone()]), Err(Error::MixedUniverse)));
        assert!(VoterId::new(0).is_err());
    }
}
