use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::prefcore::{VoterId, DEFAULT_ENUMERATION_CAP};

/// Finite stand-ins for the unbounded quantifiers over societies.
///
/// Every profile a checker evaluates has its society inside `id_pool`.
/// Base societies have at most `n_max` voters; FNP adds clone sets of at
/// most `n_prime_max` fresh ids from the pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckBounds {
    pub n_max: usize,
    pub n_prime_max: usize,
    pub id_pool: Vec<VoterId>,
    /// Cap on enumerated preferences and on explored profiles per check.
    pub cap: u64,
}

impl CheckBounds {
    /// Pool `{1..n_max + n_prime_max}`.
    pub fn new(n_max: usize, n_prime_max: usize) -> Result<Self> {
        let bounds = CheckBounds {
            n_max,
            n_prime_max,
            id_pool: VoterId::range(n_max + n_prime_max),
            cap: DEFAULT_ENUMERATION_CAP,
        };
        bounds.validate()?;
        Ok(bounds)
    }

    pub fn with_pool(mut self, pool: Vec<VoterId>) -> Result<Self> {
        let mut pool = pool;
        pool.sort();
        pool.dedup();
        self.id_pool = pool;
        self.validate()?;
        Ok(self)
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 || self.n_prime_max == 0 {
            return Err(Error::InvalidBounds("n_max and n'_max must be at least 1".into()));
        }
        if self.id_pool.len() < self.n_max {
            return Err(Error::InvalidBounds(format!(
                "an id pool of {} cannot hold societies of {}",
                self.id_pool.len(),
                self.n_max
            )));
        }
        Ok(())
    }

    /// Largest society evaluated when checking FNP or strong FNP.
    pub fn max_with_clones(&self) -> usize {
        (self.n_max + self.n_prime_max).min(self.id_pool.len())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n_max": self.n_max,
            "n_prime_max": self.n_prime_max,
            "id_pool": self.id_pool.iter().map(|i| i.get()).collect::<Vec<_>>(),
            "cap": self.cap,
        })
    }
}

impl Default for CheckBounds {
    fn default() -> Self {
        CheckBounds::new(3, 2).expect("default bounds are valid")
    }
}
