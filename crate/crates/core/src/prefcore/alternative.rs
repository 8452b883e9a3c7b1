use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Upper bound on the number of alternatives in one universe. Strict
/// comparison relations are stored as `u64` rows.
pub const MAX_ALTERNATIVES: usize = 64;

/// Upper bound on the number of objects; `2^6 = 64` alternatives.
pub const MAX_OBJECTS: usize = 6;

/// An alternative, identified by its index in the owning [`Universe`].
///
/// In a subsets universe the index is the membership bitmask of the
/// corresponding [`ObjectSet`], so `Alternative(0)` is the empty set.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Alternative(pub u8);

impl Alternative {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn bit(self) -> u64 {
        1u64 << self.0
    }
}

impl From<ObjectSet> for Alternative {
    fn from(set: ObjectSet) -> Self {
        Alternative(set.mask() as u8)
    }
}

/// A subset of the object universe `{0..O}`, stored as a membership bitmask.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ObjectSet(u32);

impl ObjectSet {
    pub const EMPTY: ObjectSet = ObjectSet(0);

    pub fn from_mask(mask: u32) -> Self {
        ObjectSet(mask)
    }

    pub fn full(objects: usize) -> Self {
        ObjectSet((1u32 << objects) - 1)
    }

    pub fn singleton(object: usize) -> Self {
        ObjectSet(1 << object)
    }

    pub fn from_objects<I: IntoIterator<Item = usize>>(objects: I) -> Self {
        ObjectSet(objects.into_iter().fold(0, |m, o| m | (1 << o)))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, object: usize) -> bool {
        self.0 >> object & 1 == 1
    }

    pub fn with(self, object: usize) -> Self {
        ObjectSet(self.0 | (1 << object))
    }

    pub fn without(self, object: usize) -> Self {
        ObjectSet(self.0 & !(1 << object))
    }

    pub fn union(self, other: ObjectSet) -> Self {
        ObjectSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ObjectSet) -> Self {
        ObjectSet(self.0 & other.0)
    }

    pub fn difference(self, other: ObjectSet) -> Self {
        ObjectSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ObjectSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member objects in ascending order.
    pub fn objects(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |o| self.contains(*o))
    }
}

impl From<Alternative> for ObjectSet {
    fn from(alt: Alternative) -> Self {
        ObjectSet(alt.0 as u32)
    }
}

/// The alternative set `A` of one domain instance.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Universe {
    /// Unstructured alternatives with opaque labels.
    Labels(Arc<[String]>),
    /// All subsets of the named objects; alternative index = bitmask.
    Subsets(Arc<[String]>),
}

/// Default object names: `x, y, z`, then `a, b, c`.
pub fn default_object_names(objects: usize) -> Vec<String> {
    const NAMES: [&str; MAX_OBJECTS] = ["x", "y", "z", "a", "b", "c"];
    NAMES.iter().take(objects).map(|s| s.to_string()).collect()
}

impl Universe {
    pub fn labels<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_ALTERNATIVES {
            return Err(Error::InvalidAlternativeCount(labels.len()));
        }
        ensure_distinct(&labels)?;
        Ok(Universe::Labels(labels.into()))
    }

    /// `count` alternatives labelled `a, b, c, ...` (or `a1, a2, ...` past 26).
    pub fn with_alternatives(count: usize) -> Result<Self> {
        let labels =
            (0..count).map(
                |i| {
                    if count <= 26 {
                        ((b'a' + i as u8) as char).to_string()
                    } else {
                        format!("a{}", i + 1)
                    }
                },
            );
        Universe::labels(labels)
    }

    pub fn subsets(objects: usize) -> Result<Self> {
        if !(2..=MAX_OBJECTS).contains(&objects) {
            return Err(Error::InvalidObjectCount(objects));
        }
        Ok(Universe::Subsets(default_object_names(objects).into()))
    }

    pub fn subsets_named<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if !(2..=MAX_OBJECTS).contains(&names.len()) {
            return Err(Error::InvalidObjectCount(names.len()));
        }
        ensure_distinct(&names)?;
        Ok(Universe::Subsets(names.into()))
    }

    pub fn len(&self) -> usize {
        match self {
            Universe::Labels(l) => l.len(),
            Universe::Subsets(o) => 1 << o.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subsets(&self) -> bool {
        matches!(self, Universe::Subsets(_))
    }

    pub fn alternatives(&self) -> impl Iterator<Item = Alternative> {
        (0..self.len()).map(|i| Alternative(i as u8))
    }

    pub fn contains(&self, alt: Alternative) -> bool {
        alt.index() < self.len()
    }

    pub fn check(&self, alt: Alternative) -> Result<Alternative> {
        if self.contains(alt) {
            Ok(alt)
        } else {
            Err(Error::AlternativeOutOfRange { index: alt.index(), size: self.len() })
        }
    }

    /// Object names, for a subsets universe.
    pub fn objects(&self) -> Option<&[String]> {
        match self {
            Universe::Subsets(o) => Some(o),
            Universe::Labels(_) => None,
        }
    }

    pub fn object_count(&self) -> Result<usize> {
        self.objects().map(|o| o.len()).ok_or(Error::NotSubsetsUniverse)
    }

    /// The whole object set `𝒪`.
    pub fn full_set(&self) -> Result<Alternative> {
        Ok(ObjectSet::full(self.object_count()?).into())
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects()
            .ok_or(Error::NotSubsetsUniverse)?
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownAlternative(name.to_string()))
    }

    /// Builds the alternative for a set of named objects.
    pub fn set_of(&self, names: &[&str]) -> Result<Alternative> {
        let mut set = ObjectSet::EMPTY;
        for n in names {
            set = set.with(self.object_index(n)?);
        }
        Ok(set.into())
    }

    pub fn label_index(&self, label: &str) -> Result<Alternative> {
        match self {
            Universe::Labels(l) => l
                .iter()
                .position(|x| x == label)
                .map(|i| Alternative(i as u8))
                .ok_or_else(|| Error::UnknownAlternative(label.to_string())),
            Universe::Subsets(_) => Err(Error::UnknownAlternative(label.to_string())),
        }
    }

    /// Human-readable name: the label, or `{x,y}` / `∅` for subsets.
    pub fn name(&self, alt: Alternative) -> String {
        match self {
            Universe::Labels(l) => l.get(alt.index()).cloned().unwrap_or_else(|| format!("#{}", alt.0)),
            Universe::Subsets(o) => {
                let set = ObjectSet::from(alt);
                if set.is_empty() {
                    "∅".to_string()
                } else {
                    let names: Vec<&str> = set.objects().map(|i| o[i].as_str()).collect();
                    format!("{{{}}}", names.join(","))
                }
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Universe::Labels(l) => format!("alternatives {{{}}}", l.join(",")),
            Universe::Subsets(o) => format!("subsets of {{{}}}", o.join(",")),
        }
    }
}

fn ensure_distinct(names: &[String]) -> Result<()> {
    let mut sorted: Vec<&String> = names.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::NonBijective(format!("duplicate name `{}`", w[0])));
    }
    Ok(())
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}
