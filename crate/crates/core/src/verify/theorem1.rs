//! The impossibility as a finite constraint problem: one variable per
//! profile of a bounded society (up to whatever the rule may ignore), one
//! value per alternative, constraints from the selected axioms.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde_json::{json, Value};

use super::csp::{Budget, Csp, CspOutcome};
use super::{Outcome, VerdictReport};
use crate::axioms::{check, Axiom, CheckBounds};
use crate::error::{Error, Result};
use crate::prefcore::{permute_objects, Alternative, DomainSpec, ObjectPermutation, Preference, VoterId};
use crate::rules::{Keying, RuleSpec, RuleTable, TableKey, Token};

/// A finite instance at one depth (largest society size).
pub struct CspInstance {
    objects: usize,
    depth: usize,
    families: BTreeSet<Axiom>,
    template: RuleTable,
    vars: Vec<TableKey>,
    csp: Csp,
}

impl CspInstance {
    /// Encodes `families` (a subset of the five impossibility axioms) over
    /// societies of at most `depth` voters.
    ///
    /// Ballots are tops when tops-onliness is selected and full preferences
    /// otherwise. Profiles are multisets when both false-name-proofness and
    /// participation are selected (they imply anonymity), otherwise labeled
    /// profiles over societies inside `{1..depth}`.
    pub fn build(objects: usize, depth: usize, families: &BTreeSet<Axiom>, cap: u64) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidBounds("depth must be at least 1".into()));
        }
        if let Some(a) = families.iter().find(|a| !Axiom::IMPOSSIBILITY.contains(a)) {
            return Err(Error::AxiomNotApplicable {
                axiom: *a,
                reason: "not one of the five constraint families".into(),
            });
        }
        let domain = DomainSpec::all_subsets(objects)?;
        let token = if families.contains(&Axiom::TopsOnliness) { Token::Top } else { Token::Preference };
        let keying = if families.contains(&Axiom::Fnp) && families.contains(&Axiom::Participation) {
            Keying::Anonymous
        } else {
            Keying::Labeled
        };
        let template = RuleTable::new(domain, token, keying, cap)?;
        let n_alts = 1usize << objects;
        let n_tokens = match token {
            Token::Top => n_alts,
            Token::Preference => template.preferences().len(),
        };

        let count = key_count(keying, n_tokens, depth);
        if count > cap as u128 {
            return Err(Error::UniverseTooLarge { count, cap });
        }
        let vars = enumerate_keys(keying, n_tokens, depth);
        let index: HashMap<TableKey, usize> = vars.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut csp = Csp::new(vars.len(), n_alts);

        // `voter with ballot t never strictly prefers b to a`
        let prefs: Arc<Vec<Preference>> = Arc::new(template.preferences().to_vec());
        let can_prefer = move |t: u16, b: u8, a: u8| -> bool {
            match token {
                Token::Top => a != b && a as u16 != t,
                Token::Preference => prefs[t as usize].beats(Alternative(b), Alternative(a)),
            }
        };

        if families.contains(&Axiom::Ontoness) {
            let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
            for (i, key) in vars.iter().enumerate() {
                let group = match keying {
                    Keying::Anonymous => vec![key.len() as u32],
                    Keying::Labeled => key.iter().map(|(id, _)| *id).collect(),
                };
                groups.entry(group).or_default().push(i);
            }
            for members in groups.into_values() {
                for v in 0..n_alts {
                    csp.add_coverage(members.clone(), v as u8);
                }
            }
        }

        if families.contains(&Axiom::Participation) {
            for (x, key) in vars.iter().enumerate().filter(|(_, k)| k.len() >= 2) {
                let mut seen = BTreeSet::new();
                for (pos, &(_, t)) in key.iter().enumerate() {
                    if keying == Keying::Anonymous && !seen.insert(t) {
                        continue;
                    }
                    let mut smaller = key.clone();
                    smaller.remove(pos);
                    let y = index[&smaller];
                    let cp = can_prefer.clone();
                    csp.add_binary(x, y, move |a, b| !cp(t, b, a));
                }
            }
        }

        if families.contains(&Axiom::Fnp) {
            for (x, key) in vars.iter().enumerate().filter(|(_, k)| k.len() < depth) {
                let mut seen = BTreeSet::new();
                for &(_, t) in key {
                    if keying == Keying::Anonymous && !seen.insert(t) {
                        continue;
                    }
                    for bigger in clone_extensions(keying, key, t, depth) {
                        let y = index[&bigger];
                        let cp = can_prefer.clone();
                        csp.add_binary(x, y, move |a, b| !cp(t, b, a));
                    }
                }
            }
        }

        if families.contains(&Axiom::ObjectNeutrality) {
            let token_maps: Vec<(Vec<u16>, Vec<u8>)> = ObjectPermutation::all(objects)
                .filter(|mu| !mu.is_identity())
                .map(|mu| {
                    let alt_map: Vec<u8> = mu.induced().images().iter().map(|a| a.0).collect();
                    let tok_map: Vec<u16> = match token {
                        Token::Top => alt_map.iter().map(|a| *a as u16).collect(),
                        Token::Preference => template
                            .preferences()
                            .iter()
                            .map(|p| permute_objects(p, &mu).and_then(|q| template.token_of(&q)))
                            .collect::<Result<_>>()?,
                    };
                    Ok((tok_map, alt_map))
                })
                .collect::<Result<_>>()?;
            for (x, key) in vars.iter().enumerate() {
                for (tok_map, alt_map) in &token_maps {
                    let mut image: TableKey = key.iter().map(|(id, t)| (*id, tok_map[*t as usize])).collect();
                    if keying == Keying::Anonymous {
                        image.sort_unstable();
                    }
                    let y = index[&image];
                    let map = alt_map.clone();
                    if y == x {
                        csp.restrict(x, move |a| map[a as usize] == a);
                    } else if x < y {
                        csp.add_binary(x, y, move |a, b| map[a as usize] == b);
                    }
                }
            }
        }

        Ok(CspInstance { objects, depth, families: families.clone(), template, vars, csp })
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn families(&self) -> &BTreeSet<Axiom> {
        &self.families
    }

    pub fn token(&self) -> Token {
        self.template.token()
    }

    pub fn keying(&self) -> Keying {
        self.template.keying()
    }

    pub fn variable_count(&self) -> usize {
        self.vars.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.csp.constraint_count()
    }

    /// The keys, in variable order.
    pub fn variables(&self) -> &[TableKey] {
        &self.vars
    }

    /// Whether `values` (one per variable) meets every constraint.
    pub fn is_solution(&self, values: &[u8]) -> bool {
        self.csp.is_solution(values)
    }

    pub fn solve(&self, budget: Budget) -> (CspOutcome, u64) {
        let (out, stats) = self.csp.solve(budget);
        (out, stats.nodes)
    }

    /// The rule given by a satisfying assignment.
    pub fn materialize(&self, values: &[u8]) -> RuleSpec {
        let mut table = self.template.clone();
        for (key, v) in self.vars.iter().zip(values) {
            table.insert(key.clone(), Alternative(*v));
        }
        let dropped: Vec<&str> =
            Axiom::IMPOSSIBILITY.iter().filter(|a| !self.families.contains(a)).map(|a| a.name()).collect();
        let name = if dropped.is_empty() {
            format!("csp-d{}", self.depth)
        } else {
            format!("csp-d{}-without-{}", self.depth, dropped.join("+"))
        };
        table.into_rule(name)
    }

    /// Bounds under which the materialized rule is total and every
    /// constraint of the instance has a counterpart in the checker.
    pub fn check_bounds(&self) -> Result<CheckBounds> {
        let pool = (1..=self.depth as u32).map(VoterId::new).collect::<Result<Vec<_>>>()?;
        CheckBounds::new(self.depth, self.depth.saturating_sub(1).max(1))?.with_pool(pool)
    }
}

fn key_count(keying: Keying, n_tokens: usize, depth: usize) -> u128 {
    let t = n_tokens as u128;
    (1..=depth as u128)
        .map(|k| match keying {
            Keying::Anonymous => (1..=k).fold(1u128, |acc, i| acc * (t + i - 1) / i),
            Keying::Labeled => {
                let societies = (1..=k).fold(1u128, |acc, i| acc * (depth as u128 - i + 1) / i);
                societies.saturating_mul(t.saturating_pow(k as u32))
            }
        })
        .fold(0u128, u128::saturating_add)
}

/// Anonymous keys: nondecreasing token lists (ids 0). Labeled keys: a
/// nonempty society in `{1..depth}` with one token per voter.
fn enumerate_keys(keying: Keying, n_tokens: usize, depth: usize) -> Vec<TableKey> {
    let mut keys = Vec::new();
    match keying {
        Keying::Anonymous => {
            for k in 1..=depth {
                for combo in (0..n_tokens as u16).combinations_with_replacement(k) {
                    keys.push(combo.into_iter().map(|t| (0, t)).collect());
                }
            }
        }
        Keying::Labeled => {
            for k in 1..=depth {
                for society in (1..=depth as u32).combinations(k) {
                    for toks in (0..k).map(|_| 0..n_tokens as u16).multi_cartesian_product() {
                        keys.push(society.iter().copied().zip(toks).collect());
                    }
                }
            }
        }
    }
    keys
}

/// Keys obtained by adding clones with ballot `t` within `depth`.
fn clone_extensions(keying: Keying, key: &TableKey, t: u16, depth: usize) -> Vec<TableKey> {
    let room = depth - key.len();
    match keying {
        Keying::Anonymous => (1..=room)
            .map(|k| {
                let mut bigger = key.clone();
                bigger.extend(std::iter::repeat_n((0, t), k));
                bigger.sort_unstable();
                bigger
            })
            .collect(),
        Keying::Labeled => {
            let used: BTreeSet<u32> = key.iter().map(|(id, _)| *id).collect();
            let fresh: Vec<u32> = (1..=depth as u32).filter(|i| !used.contains(i)).collect();
            (1..=room)
                .flat_map(|k| fresh.iter().copied().combinations(k))
                .map(|extra| {
                    let mut bigger = key.clone();
                    bigger.extend(extra.into_iter().map(|id| (id, t)));
                    bigger.sort_unstable();
                    bigger
                })
                .collect()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Theorem1Options {
    pub objects: usize,
    pub start: usize,
    pub ceiling: usize,
    /// Wall-clock budget for the whole run.
    pub budget: Duration,
    pub max_nodes: u64,
    pub cap: u64,
    /// Also solve each single-family drop at the unsatisfiable depth.
    pub drops: bool,
}

impl Default for Theorem1Options {
    fn default() -> Self {
        Theorem1Options {
            objects: 2,
            start: 1,
            ceiling: 4,
            budget: Duration::from_secs(60),
            max_nodes: u64::MAX,
            cap: crate::prefcore::DEFAULT_ENUMERATION_CAP,
            drops: true,
        }
    }
}

enum Solved {
    Sat { rule: RuleSpec, checks: BTreeMap<Axiom, bool> },
    Unsat,
    Budget,
}

struct Attempt {
    summary: Value,
    solved: Solved,
}

fn attempt(objects: usize, depth: usize, families: &BTreeSet<Axiom>, budget: Budget, cap: u64) -> Result<Attempt> {
    let inst = CspInstance::build(objects, depth, families, cap)?;
    let (out, nodes) = inst.solve(budget);
    let mut summary = json!({
        "depth": depth,
        "families": families.iter().map(|a| a.name()).collect::<Vec<_>>(),
        "ballot": match inst.token() { Token::Top => "top", Token::Preference => "preference" },
        "profiles": match inst.keying() { Keying::Anonymous => "anonymous", Keying::Labeled => "labeled" },
        "variables": inst.variable_count(),
        "constraints": inst.constraint_count(),
        "nodes": nodes,
    });
    let solved = match out {
        CspOutcome::Unsat => Solved::Unsat,
        CspOutcome::Budget => Solved::Budget,
        CspOutcome::Sat(values) => {
            let rule = inst.materialize(&values);
            let bounds = inst.check_bounds()?.with_cap(cap);
            let mut checks = BTreeMap::new();
            for axiom in families {
                checks.insert(*axiom, check(&rule, *axiom, &bounds)?.passed());
            }
            if let Some((axiom, _)) = checks.iter().find(|(_, ok)| !**ok) {
                return Err(Error::Inconsistent(format!(
                    "constraint search at depth {depth} produced a rule failing {axiom}"
                )));
            }
            summary["witness"] = rule.params()["table"].clone();
            summary["witness_checks"] = checks
                .iter()
                .map(|(a, ok)| (a.name().to_string(), json!(ok)))
                .collect::<serde_json::Map<_, _>>()
                .into();
            Solved::Sat { rule, checks }
        }
    };
    summary["result"] = json!(match solved {
        Solved::Sat { .. } => "sat",
        Solved::Unsat => "unsat",
        Solved::Budget => "budget-exceeded",
    });
    Ok(Attempt { summary, solved })
}

/// Deepens the society bound until the five families become jointly
/// unsatisfiable, then checks that dropping any one family restores a
/// solution. Every solution is re-checked by the axiom checkers.
pub fn verify_theorem1(opts: &Theorem1Options) -> Result<VerdictReport> {
    let started = Instant::now();
    let params = json!({
        "objects": opts.objects,
        "start": opts.start,
        "ceiling": opts.ceiling,
        "budget_seconds": opts.budget.as_secs_f64(),
        "fnp_encoding": "all clone counts within the depth",
    });
    let report = VerdictReport::new("thm1", params, started);
    let budget = Budget { max_nodes: opts.max_nodes, deadline: Some(started + opts.budget) };
    let all: BTreeSet<Axiom> = Axiom::IMPOSSIBILITY.into_iter().collect();

    let mut levels = Vec::new();
    let mut unsat_depth = None;
    for depth in opts.start.max(1)..=opts.ceiling {
        let at = attempt(opts.objects, depth, &all, budget, opts.cap)?;
        let solved = at.solved;
        levels.push(at.summary);
        match solved {
            Solved::Sat { .. } => continue,
            Solved::Unsat => {
                unsat_depth = Some(depth);
                break;
            }
            Solved::Budget => {
                let artifacts = json!({ "levels": levels, "unsat_depth": null });
                let summary = format!("search budget exhausted at depth {depth}");
                return Ok(report.finish(Outcome::Inconclusive, summary, artifacts, started));
            }
        }
    }
    let Some(depth) = unsat_depth else {
        let artifacts = json!({ "levels": levels, "unsat_depth": null });
        let summary = format!("satisfiable up to the ceiling depth {}", opts.ceiling);
        return Ok(report.finish(Outcome::Inconclusive, summary, artifacts, started));
    };

    let mut drops = Vec::new();
    let mut outcome = Outcome::Confirmed;
    let mut notes = Vec::new();
    if opts.drops {
        for dropped in Axiom::IMPOSSIBILITY {
            let mut families = all.clone();
            families.remove(&dropped);
            let at = attempt(opts.objects, depth, &families, budget, opts.cap)?;
            let mut summary = at.summary;
            summary["dropped"] = json!(dropped.name());
            match &at.solved {
                Solved::Sat { rule, checks } => {
                    debug_assert!(checks.values().all(|ok| *ok), "{}", rule.name());
                }
                Solved::Unsat => {
                    outcome = Outcome::Refuted;
                    notes.push(format!("still unsatisfiable without {dropped}"));
                }
                Solved::Budget => {
                    if outcome == Outcome::Confirmed {
                        outcome = Outcome::Inconclusive;
                    }
                    notes.push(format!("budget exhausted without {dropped}"));
                }
            }
            drops.push(summary);
        }
    }
    let artifacts = json!({ "levels": levels, "unsat_depth": depth, "drops": drops });
    let mut summary = format!("unsatisfiable at depth {depth} for {} objects", opts.objects);
    if opts.drops && notes.is_empty() {
        summary.push_str("; each single-family drop is satisfiable and its witness passes the other four checks");
    }
    for n in notes {
        summary.push_str("; ");
        summary.push_str(&n);
    }
    Ok(report.finish(outcome, summary, artifacts, started))
}
