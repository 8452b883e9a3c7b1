use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::alternative::{Alternative, ObjectSet};
use super::preference::Preference;
use super::profile::VoterId;
use crate::error::{Error, Result};

/// A permutation of voter ids with finite support; ids outside the support
/// are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VoterPermutation {
    map: BTreeMap<VoterId, VoterId>,
}

impl VoterPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds `σ` from `(i, σ(i))` pairs. The pairs must define a bijection
    /// of their support onto itself.
    pub fn new<I: IntoIterator<Item = (VoterId, VoterId)>>(pairs: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (from, to) in pairs {
            if map.insert(from, to).is_some_and(|old| old != to) {
                return Err(Error::NonBijective(format!("voter {from} mapped twice")));
            }
        }
        let domain: BTreeSet<VoterId> = map.keys().copied().collect();
        let image: BTreeSet<VoterId> = map.values().copied().collect();
        if domain != image {
            return Err(Error::NonBijective("voter mapping does not permute its support".into()));
        }
        map.retain(|k, v| k != v);
        Ok(VoterPermutation { map })
    }

    pub fn transposition(a: VoterId, b: VoterId) -> Self {
        Self::new([(a, b), (b, a)]).expect("a transposition is a bijection")
    }

    pub fn apply(&self, voter: VoterId) -> VoterId {
        self.map.get(&voter).copied().unwrap_or(voter)
    }

    pub fn inverse(&self) -> Self {
        VoterPermutation { map: self.map.iter().map(|(a, b)| (*b, *a)).collect() }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let support: BTreeSet<VoterId> = self.map.keys().chain(other.map.keys()).copied().collect();
        Self::new(support.into_iter().map(|i| (i, self.apply(other.apply(i))))).expect("composition of bijections")
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Non-fixed `(i, σ(i))` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (VoterId, VoterId)> + '_ {
        self.map.iter().map(|(a, b)| (*a, *b))
    }
}

/// A permutation `γ` of the alternatives `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltPermutation {
    image: Vec<Alternative>,
}

impl AltPermutation {
    pub fn new(image: Vec<Alternative>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for a in &image {
            match seen.get_mut(a.index()) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::NonBijective(format!("alternative image {image:?}"))),
            }
        }
        Ok(AltPermutation { image })
    }

    pub fn identity(n: usize) -> Self {
        AltPermutation { image: (0..n).map(|i| Alternative(i as u8)).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, alt: Alternative) -> Alternative {
        self.image[alt.index()]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![Alternative(0); self.image.len()];
        for (a, b) in self.image.iter().enumerate() {
            inv[b.index()] = Alternative(a as u8);
        }
        AltPermutation { image: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        AltPermutation { image: other.image.iter().map(|a| self.apply(*a)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, a)| a.index() == i)
    }

    pub fn images(&self) -> &[Alternative] {
        &self.image
    }

    /// All `n!` permutations in lexicographic order of images.
    pub fn all(n: usize) -> impl Iterator<Item = AltPermutation> {
        (0..n).permutations(n).map(|p| AltPermutation { image: p.into_iter().map(|i| Alternative(i as u8)).collect() })
    }
}

/// A permutation `μ` of the objects `0..O`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObjectPermutation {
    image: Vec<usize>,
}

impl ObjectPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut sorted = image.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, o)| i != *o) {
            return Err(Error::NonBijective(format!("object image {image:?}")));
        }
        Ok(ObjectPermutation { image })
    }

    pub fn identity(objects: usize) -> Self {
        ObjectPermutation { image: (0..objects).collect() }
    }

    pub fn apply(&self, object: usize) -> usize {
        self.image[object]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, o)| i == *o)
    }

    /// `μ(S) = {μ(x) : x ∈ S}`.
    pub fn apply_set(&self, set: ObjectSet) -> ObjectSet {
        ObjectSet::from_objects(set.objects().map(|o| self.image[o]))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (a, b) in self.image.iter().enumerate() {
            inv[*b] = a;
        }
        ObjectPermutation { image: inv }
    }

    /// The permutation of `2^O` induced by `μ`.
    pub fn induced(&self) -> AltPermutation {
        let n = 1usize << self.image.len();
        AltPermutation {
            image: (0..n).map(|mask| Alternative::from(self.apply_set(ObjectSet::from_mask(mask as u32)))).collect(),
        }
    }

    pub fn all(objects: usize) -> impl Iterator<Item = ObjectPermutation> {
        (0..objects).permutations(objects).map(|image| ObjectPermutation { image })
    }
}

/// `P^γ`: `γ(A) P^γ γ(B)` iff `A P B`.
pub fn permute_alternatives(pref: &Preference, gamma: &AltPermutation) -> Result<Preference> {
    if gamma.len() != pref.len() {
        return Err(Error::NonBijective(format!(
            "permutation of {} alternatives applied to a preference over {}",
            gamma.len(),
            pref.len()
        )));
    }
    Preference::from_order(pref.order().iter().map(|a| gamma.apply(*a)).collect())
}

/// `P^μ`, the action induced on `2^O` by an object permutation.
pub fn permute_objects(pref: &Preference, mu: &ObjectPermutation) -> Result<Preference> {
    permute_alternatives(pref, &mu.induced())
}
