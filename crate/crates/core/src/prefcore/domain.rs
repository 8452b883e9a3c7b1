use std::fmt;

use super::alternative::Universe;
use super::preference::{enumerate_linear_orders, Preference};
use super::separable::{enumerate_separable, is_separable};
use crate::error::{Error, Result};

/// Which preferences a domain admits.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DomainKind {
    /// Every strict order over the universe (`𝒰_A`, or `𝒰_O` over `2^O`).
    Universal,
    /// Separable orders over `2^O` (`𝒮`).
    Separable,
    /// `𝒮 ∪ {P̄₀}` for one extra preference.
    SeparablePlus(Preference),
}

/// A preference domain `𝒟` over a fixed universe.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DomainSpec {
    universe: Universe,
    kind: DomainKind,
}

impl DomainSpec {
    pub fn universal(universe: Universe) -> Self {
        DomainSpec { universe, kind: DomainKind::Universal }
    }

    /// `𝒰_O`: every order over the subsets of `objects` objects.
    pub fn all_subsets(objects: usize) -> Result<Self> {
        Ok(Self::universal(Universe::subsets(objects)?))
    }

    pub fn separable(objects: usize) -> Result<Self> {
        Ok(DomainSpec { universe: Universe::subsets(objects)?, kind: DomainKind::Separable })
    }

    pub fn separable_over(universe: Universe) -> Result<Self> {
        universe.object_count()?;
        Ok(DomainSpec { universe, kind: DomainKind::Separable })
    }

    /// `𝒮 ∪ {extra}`. The extra preference may itself be separable, in
    /// which case the domain is just `𝒮`.
    pub fn separable_plus(universe: Universe, extra: Preference) -> Result<Self> {
        universe.object_count()?;
        if extra.len() != universe.len() {
            return Err(Error::MixedUniverse);
        }
        Ok(DomainSpec { universe, kind: DomainKind::SeparablePlus(extra) })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    /// Short machine name: `universal`, `separable`, `separable+1`.
    pub fn name(&self) -> &'static str {
        match self.kind {
            DomainKind::Universal => "universal",
            DomainKind::Separable => "separable",
            DomainKind::SeparablePlus(_) => "separable+1",
        }
    }

    pub fn contains(&self, pref: &Preference) -> Result<bool> {
        if pref.len() != self.universe.len() {
            return Ok(false);
        }
        Ok(match &self.kind {
            DomainKind::Universal => true,
            DomainKind::Separable => is_separable(pref)?,
            DomainKind::SeparablePlus(extra) => pref == extra || is_separable(pref)?,
        })
    }

    /// All preferences of the domain, pairwise distinct, in canonical order
    /// (the extra preference of `𝒮 ∪ {P̄₀}` comes last when not separable).
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Preference>> {
        match &self.kind {
            DomainKind::Universal => enumerate_linear_orders(self.universe.len(), cap),
            DomainKind::Separable => enumerate_separable(self.universe.object_count()?, cap),
            DomainKind::SeparablePlus(extra) => {
                let mut prefs = enumerate_separable(self.universe.object_count()?, cap)?;
                if !prefs.contains(extra) {
                    prefs.push(extra.clone());
                }
                Ok(prefs)
            }
        }
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DomainKind::Universal => write!(f, "all orders over {}", self.universe),
            DomainKind::Separable => write!(f, "separable orders over {}", self.universe),
            DomainKind::SeparablePlus(extra) => {
                let names: Vec<String> = extra.order().iter().map(|a| self.universe.name(*a)).collect();
                write!(f, "separable orders over {} plus {}", self.universe, names.join(">"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefcore::{Alternative, DEFAULT_ENUMERATION_CAP};

    #[test]
    fn separable_is_a_subset_of_all_orders() {
        let all = DomainSpec::all_subsets(2).unwrap().enumerate(DEFAULT_ENUMERATION_CAP).unwrap();
        let sep = DomainSpec::separable(2).unwrap();
        let listed = sep.enumerate(DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all.len(), 24);
        assert_eq!(listed.len(), 8);
        for p in &all {
            assert_eq!(sep.contains(p).unwrap(), listed.contains(p));
        }
    }

    #[test]
    fn plus_one_adds_exactly_one() {
        let u = Universe::subsets(2).unwrap();
        let odd = Preference::from_order([1, 2, 0, 3].map(Alternative).to_vec()).unwrap();
        let d = DomainSpec::separable_plus(u, odd.clone()).unwrap();
        let prefs = d.enumerate(DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(prefs.len(), 9);
        assert_eq!(prefs.last(), Some(&odd));
        assert!(d.contains(&odd).unwrap());
    }

    #[test]
    fn separable_requires_subsets() {
        let u = Universe::with_alternatives(3).unwrap();
        assert!(DomainSpec::separable_over(u).is_err());
    }
}
