//! Anonymity against neutrality on a fixed society, decided three ways:
//! the divisor-sum condition, the stabilizer criterion over anonymous
//! profiles, and (when small) brute force over every rule.

use std::collections::HashMap;
use std::time::Instant;

use itertools::Itertools;
use serde_json::json;

use super::{Outcome, VerdictReport};
use crate::error::{Error, Result};
use crate::prefcore::{enumerate_linear_orders, permute_alternatives, AltPermutation, Preference};

/// Largest rule space the brute-force route will walk.
const SCAN_LIMIT: u128 = 1 << 20;

/// Compatible exactly when `alternatives` is not a sum of divisors of
/// `voters` larger than one (repetitions allowed).
pub fn divisor_sum_compatible(alternatives: usize, voters: usize) -> bool {
    let divisors: Vec<usize> = (2..=voters).filter(|d| voters.is_multiple_of(*d)).collect();
    let mut reachable = vec![false; alternatives + 1];
    reachable[0] = true;
    for s in 1..=alternatives {
        reachable[s] = divisors.iter().any(|d| *d <= s && reachable[s - d]);
    }
    !reachable[alternatives]
}

/// `table[g][p]`: index of `p` relabeled by the `g`-th permutation.
fn action(alternatives: usize, prefs: &[Preference]) -> Result<(Vec<AltPermutation>, Vec<Vec<usize>>)> {
    let index: HashMap<&Preference, usize> = prefs.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let perms: Vec<AltPermutation> = AltPermutation::all(alternatives).collect();
    let table = perms
        .iter()
        .map(|g| prefs.iter().map(|p| Ok(index[&permute_alternatives(p, g)?])).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok((perms, table))
}

/// An anonymous and neutral rule exists iff every multiset of ballots has
/// a stabilizer (within the relabelings) that fixes some alternative.
pub fn remark2_stabilizer(alternatives: usize, voters: usize, cap: u64) -> Result<bool> {
    let prefs = enumerate_linear_orders(alternatives, cap)?;
    let (perms, table) = action(alternatives, &prefs)?;
    let multisets = (1..=voters as u128).fold(1u128, |acc, i| acc * (prefs.len() as u128 + i - 1) / i);
    let work = multisets * perms.len() as u128;
    if work > cap as u128 {
        return Err(Error::UniverseTooLarge { count: work, cap });
    }
    for m in (0..prefs.len()).combinations_with_replacement(voters) {
        let mut fixed = (0..alternatives).collect::<Vec<_>>();
        for (g, row) in perms.iter().zip(&table) {
            let mut image: Vec<usize> = m.iter().map(|p| row[*p]).collect();
            image.sort_unstable();
            if image == m {
                fixed.retain(|a| g.images()[*a].index() == *a);
            }
        }
        if fixed.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of rules on society `{1..voters}` and how many of them are both
/// anonymous and neutral; `None` when the rule space is too large.
pub fn remark2_scan(alternatives: usize, voters: usize, cap: u64) -> Result<Option<(u128, u128)>> {
    let prefs = enumerate_linear_orders(alternatives, cap)?;
    let (_, table) = action(alternatives, &prefs)?;
    let perms: Vec<AltPermutation> = AltPermutation::all(alternatives).collect();
    let profiles: Vec<Vec<usize>> = (0..voters).map(|_| 0..prefs.len()).multi_cartesian_product().collect();
    let rules = (alternatives as u128).checked_pow(profiles.len() as u32).filter(|r| *r <= SCAN_LIMIT);
    let Some(rules) = rules else { return Ok(None) };
    let index: HashMap<&Vec<usize>, usize> = profiles.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let swaps: Vec<Vec<usize>> = (0..voters).permutations(voters).collect();
    // pairs (i, j) that anonymity forces equal; triples (i, j, g) for neutrality
    let mut same = Vec::new();
    let mut relabeled = Vec::new();
    for (i, p) in profiles.iter().enumerate() {
        for s in &swaps {
            let q: Vec<usize> = s.iter().map(|v| p[*v]).collect();
            same.push((i, index[&q]));
        }
        for (g, row) in table.iter().enumerate() {
            let q: Vec<usize> = p.iter().map(|b| row[*b]).collect();
            relabeled.push((i, index[&q], g));
        }
    }
    let mut both = 0u128;
    let mut values = vec![0usize; profiles.len()];
    for code in 0..rules {
        let mut rest = code;
        for v in values.iter_mut() {
            *v = (rest % alternatives as u128) as usize;
            rest /= alternatives as u128;
        }
        let anonymous = same.iter().all(|(i, j)| values[*i] == values[*j]);
        let neutral =
            anonymous && relabeled.iter().all(|(i, j, g)| perms[*g].images()[values[*i]].index() == values[*j]);
        both += neutral as u128;
    }
    Ok(Some((rules, both)))
}

pub fn verify_remark2(alternatives: usize, voters: usize, cap: u64) -> Result<VerdictReport> {
    let started = Instant::now();
    if alternatives < 2 || voters == 0 {
        return Err(Error::InvalidBounds("need at least two alternatives and one voter".into()));
    }
    let params = json!({ "alternatives": alternatives, "society": (1..=voters).collect::<Vec<_>>() });
    let report = VerdictReport::new("remark2", params, started);
    let predicted = divisor_sum_compatible(alternatives, voters);
    let exact = remark2_stabilizer(alternatives, voters, cap)?;
    let scan = remark2_scan(alternatives, voters, cap)?;
    let scanned = scan.map(|(_, both)| both > 0);
    let agree = predicted == exact && scanned.is_none_or(|s| s == exact);
    let finding = if exact { "compatible" } else { "incompatible" };
    let artifacts = json!({
        "finding": finding,
        "divisor_sum_compatible": predicted,
        "stabilizer_compatible": exact,
        "scan": scan.map(|(rules, both)| json!({ "rules": rules.to_string(), "anonymous_and_neutral": both.to_string() })),
    });
    let outcome = if agree { Outcome::Confirmed } else { Outcome::Refuted };
    let summary = if agree {
        format!("anonymity and neutrality are {finding} for {alternatives} alternatives and {voters} voters")
    } else {
        format!("routes disagree: divisor test {predicted}, stabilizer {exact}, scan {scanned:?}")
    };
    Ok(report.finish(outcome, summary, artifacts, started))
}
