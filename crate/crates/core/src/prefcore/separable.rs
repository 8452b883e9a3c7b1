//! Separable preferences over `2^O`.
//!
//! A preference is separable when adding an object `x` to any set `S`
//! improves `S` exactly when `{x}` beats `∅`. Equivalently, adding `x`
//! improves `S` exactly when `x` belongs to the top set.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::alternative::{Alternative, ObjectSet};
use super::preference::{enumerate_linear_orders, Preference};
use crate::error::{Error, Result};

fn object_count(pref: &Preference) -> Result<usize> {
    let n = pref.len();
    if !n.is_power_of_two() || n < 4 {
        return Err(Error::NotSubsetsUniverse);
    }
    Ok(n.trailing_zeros() as usize)
}

/// Separability by the defining condition over every `(S, x)` with `x ∉ S`.
pub fn is_separable_by_definition(pref: &Preference) -> Result<bool> {
    let objects = object_count(pref)?;
    let empty = Alternative(0);
    Ok((0..objects).all(|x| {
        let good = pref.beats(ObjectSet::singleton(x).into(), empty);
        (0..1u32 << objects)
            .map(ObjectSet::from_mask)
            .filter(|s| !s.contains(x))
            .all(|s| pref.beats(s.with(x).into(), s.into()) == good)
    }))
}

/// Separability by the top-set criterion: `S ∪ {x}` beats `S` iff
/// `x ∈ t(P)`.
pub fn is_separable_by_top(pref: &Preference) -> Result<bool> {
    let objects = object_count(pref)?;
    let top = ObjectSet::from(pref.top());
    Ok((0..objects).all(|x| {
        let good = top.contains(x);
        (0..1u32 << objects)
            .map(ObjectSet::from_mask)
            .filter(|s| !s.contains(x))
            .all(|s| pref.beats(s.with(x).into(), s.into()) == good)
    }))
}

/// Whether `pref` over `2^O` is separable. Debug builds cross-check the
/// two characterizations.
pub fn is_separable(pref: &Preference) -> Result<bool> {
    let by_definition = is_separable_by_definition(pref)?;
    debug_assert_eq!(Some(by_definition), is_separable_by_top(pref).ok(), "{pref:?}");
    Ok(by_definition)
}

/// First `(S, x)` in canonical order (`S` by mask, then `x`) at which
/// `pref` breaks separability.
///
/// Returns `(S, x, x_in_top)`: when `x_in_top` the pair satisfies
/// `S P S ∪ {x}` with `x ∈ t(P)`, otherwise `S ∪ {x} P S` with `x ∉ t(P)`.
pub fn separability_breach(pref: &Preference) -> Result<Option<(ObjectSet, usize, bool)>> {
    let objects = object_count(pref)?;
    let top = ObjectSet::from(pref.top());
    for mask in 0..1u32 << objects {
        let s = ObjectSet::from_mask(mask);
        for x in (0..objects).filter(|x| !s.contains(*x)) {
            let improves = pref.beats(s.with(x).into(), s.into());
            if improves != top.contains(x) {
                return Ok(Some((s, x, top.contains(x))));
            }
        }
    }
    Ok(None)
}

/// All separable preferences over `2^O`, in canonical order.
///
/// The filter runs once per object count; later calls (under a cap that
/// admits `|2^O|!`) reuse its result.
pub fn enumerate_separable(objects: usize, cap: u64) -> Result<Vec<Preference>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<Preference>>>> = OnceLock::new();
    if objects < 2 {
        return Err(Error::InvalidObjectCount(objects));
    }
    let all = enumerate_linear_orders_checked(1 << objects, cap)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&objects) {
        return Ok(hit.clone());
    }
    let mut out = Vec::new();
    for p in all()? {
        if is_separable(&p)? {
            out.push(p);
        }
    }
    cache.lock().expect("cache lock").insert(objects, out.clone());
    Ok(out)
}

/// Validates the cap up front and defers the enumeration itself.
fn enumerate_linear_orders_checked(n: usize, cap: u64) -> Result<impl FnOnce() -> Result<Vec<Preference>>> {
    let count: u128 = (1..=n as u128).product();
    if count > cap as u128 {
        return Err(Error::UniverseTooLarge { count, cap });
    }
    Ok(move || enumerate_linear_orders(n, cap))
}

/// Canonical separable preference with top `top`: subsets ranked by
/// `|S ∩ T| − |S ∖ T|` descending, ties by ascending mask.
pub fn canonical_separable(objects: usize, top: ObjectSet) -> Result<Preference> {
    if objects < 2 || !top.is_subset(ObjectSet::full(objects)) {
        return Err(Error::UnrepresentableTop(format!("{top:?}")));
    }
    let score = |s: ObjectSet| s.intersection(top).len() as i32 - s.difference(top).len() as i32;
    let mut order: Vec<ObjectSet> = (0..1u32 << objects).map(ObjectSet::from_mask).collect();
    order.sort_by_key(|s| (-score(*s), s.mask()));
    Preference::from_order(order.into_iter().map(Alternative::from).collect())
}
