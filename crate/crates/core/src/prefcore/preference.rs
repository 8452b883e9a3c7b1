use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;

use super::alternative::{Alternative, MAX_ALTERNATIVES};
use crate::error::{Error, Result};

/// Default enumeration cap: `10!` orders.
pub const DEFAULT_ENUMERATION_CAP: u64 = 3_628_800;

/// A strict linear order over the alternatives `0..len`.
///
/// Cheap to clone: the order and its inverse are shared.
#[derive(Clone)]
pub struct Preference(Arc<Ranking>);

struct Ranking {
    /// Best first.
    order: Box<[Alternative]>,
    /// `position[a]` is the 0-based position of `a` in `order`.
    position: Box<[u8]>,
}

impl Preference {
    /// Builds a preference from a best-first list. The list must be a
    /// permutation of `0..order.len()`.
    pub fn from_order(order: Vec<Alternative>) -> Result<Self> {
        let n = order.len();
        if n == 0 || n > MAX_ALTERNATIVES {
            return Err(Error::InvalidAlternativeCount(n));
        }
        let mut position = vec![u8::MAX; n];
        for (pos, alt) in order.iter().enumerate() {
            if alt.index() >= n {
                return Err(Error::AlternativeOutOfRange { index: alt.index(), size: n });
            }
            if position[alt.index()] != u8::MAX {
                return Err(Error::NotALinearOrder(format!("alternative {} ranked twice", alt.0)));
            }
            position[alt.index()] = pos as u8;
        }
        Ok(Self::from_parts(order.into_boxed_slice(), position.into_boxed_slice()))
    }

    /// Builds a preference from positions: `positions[a]` is where `a` sits
    /// (0 = best).
    pub fn from_positions(positions: &[usize]) -> Result<Self> {
        let n = positions.len();
        let mut order = vec![Alternative(u8::MAX); n];
        for (alt, &pos) in positions.iter().enumerate() {
            if pos >= n || order[pos].0 != u8::MAX {
                return Err(Error::NotALinearOrder(format!("bad position vector {positions:?}")));
            }
            order[pos] = Alternative(alt as u8);
        }
        Self::from_order(order)
    }

    fn from_parts(order: Box<[Alternative]>, position: Box<[u8]>) -> Self {
        Preference(Arc::new(Ranking { order, position }))
    }

    pub fn len(&self) -> usize {
        self.0.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Best-first list of alternatives.
    pub fn order(&self) -> &[Alternative] {
        &self.0.order
    }

    /// `t(P)`.
    pub fn top(&self) -> Alternative {
        self.0.order[0]
    }

    /// `b(P)`.
    pub fn bottom(&self) -> Alternative {
        self.0.order[self.len() - 1]
    }

    /// Rank in `1..=len`, rank 1 being the best alternative.
    pub fn rank(&self, alt: Alternative) -> Option<usize> {
        self.0.position.get(alt.index()).map(|p| *p as usize + 1)
    }

    /// Alternative at a 1-based rank.
    pub fn at_rank(&self, rank: usize) -> Option<Alternative> {
        rank.checked_sub(1).and_then(|r| self.0.order.get(r).copied())
    }

    pub(crate) fn pos(&self, alt: Alternative) -> usize {
        self.0.position[alt.index()] as usize
    }

    /// `a P b`: strictly better.
    pub fn prefers(&self, a: Alternative, b: Alternative) -> Result<bool> {
        let ra = self.rank(a).ok_or(Error::AlternativeOutOfRange { index: a.index(), size: self.len() })?;
        let rb = self.rank(b).ok_or(Error::AlternativeOutOfRange { index: b.index(), size: self.len() })?;
        Ok(ra < rb)
    }

    /// `a R b`: strictly better or equal.
    pub fn weakly_prefers(&self, a: Alternative, b: Alternative) -> Result<bool> {
        Ok(a == b || self.prefers(a, b)?)
    }

    /// Unchecked strict comparison for hot loops; both alternatives must be
    /// in range.
    pub(crate) fn beats(&self, a: Alternative, b: Alternative) -> bool {
        self.pos(a) < self.pos(b)
    }

    /// Bitmask of alternatives ranked strictly below `alt`.
    pub(crate) fn below_mask(&self, alt: Alternative) -> u64 {
        self.0.order[self.pos(alt) + 1..].iter().fold(0, |m, a| m | a.bit())
    }
}

impl PartialEq for Preference {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.order == other.0.order
    }
}

impl Eq for Preference {}

impl Hash for Preference {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.order.hash(state);
    }
}

impl PartialOrd for Preference {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic over position (rank) vectors, the canonical enumeration
/// order.
impl Ord for Preference {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.position.cmp(&other.0.position)
    }
}

impl fmt::Debug for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.order().iter().map(|a| a.0).join(">"))
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Every strict order over `0..n`, each exactly once, lexicographic over
/// rank vectors.
pub fn enumerate_linear_orders(n: usize, cap: u64) -> Result<Vec<Preference>> {
    if n == 0 || n > MAX_ALTERNATIVES {
        return Err(Error::InvalidAlternativeCount(n));
    }
    let count = factorial(n);
    if count > cap as u128 {
        return Err(Error::UniverseTooLarge { count, cap });
    }
    // `permutations` is lexicographic in its input order, and each output
    // is read as a position vector.
    Ok((0..n)
        .permutations(n)
        .map(|positions| {
            let mut order = vec![Alternative(0); n];
            for (alt, pos) in positions.iter().enumerate() {
                order[*pos] = Alternative(alt as u8);
            }
            let position = positions.iter().map(|p| *p as u8).collect::<Vec<_>>();
            Preference::from_parts(order.into_boxed_slice(), position.into_boxed_slice())
        })
        .collect())
}
