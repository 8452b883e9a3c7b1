//! A small finite-domain constraint solver: binary table constraints,
//! "some variable takes this value" coverage constraints, arc consistency,
//! and depth-first search with conflict-weighted branching and restarts.

use std::collections::VecDeque;
use std::time::Instant;

/// Search limits.
#[derive(Copy, Clone, Debug)]
pub struct Budget {
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_nodes: u64::MAX, deadline: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CspOutcome {
    /// A satisfying assignment, one value per variable.
    Sat(Vec<u8>),
    Unsat,
    /// The budget ran out first.
    Budget,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub restarts: u64,
}

struct Binary {
    x: usize,
    y: usize,
    /// `fwd[a]`: values of `y` compatible with `x = a`.
    fwd: Vec<u64>,
    /// `rev[b]`: values of `x` compatible with `y = b`.
    rev: Vec<u64>,
}

struct Coverage {
    vars: Vec<usize>,
    value: u8,
}

/// A wiped-out domain, with the constraint that emptied it when known.
struct Conflict(Option<usize>);

/// Variables over values `0..values` (at most 64).
pub struct Csp {
    values: usize,
    domains: Vec<u64>,
    binaries: Vec<Binary>,
    coverage: Vec<Coverage>,
    watch_binary: Vec<Vec<usize>>,
    watch_coverage: Vec<Vec<usize>>,
}

impl Csp {
    pub fn new(vars: usize, values: usize) -> Self {
        assert!((1..=64).contains(&values), "values must fit a u64 mask");
        let full = if values == 64 { u64::MAX } else { (1u64 << values) - 1 };
        Csp {
            values,
            domains: vec![full; vars],
            binaries: Vec::new(),
            coverage: Vec::new(),
            watch_binary: vec![Vec::new(); vars],
            watch_coverage: vec![Vec::new(); vars],
        }
    }

    pub fn var_count(&self) -> usize {
        self.domains.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.binaries.len() + self.coverage.len()
    }

    /// Keeps only the values for which `allowed` holds.
    pub fn restrict(&mut self, var: usize, allowed: impl Fn(u8) -> bool) {
        let mask = (0..self.values as u8).filter(|v| allowed(*v)).fold(0u64, |m, v| m | 1 << v);
        self.domains[var] &= mask;
    }

    /// `allowed(value of x, value of y)` must hold.
    pub fn add_binary(&mut self, x: usize, y: usize, allowed: impl Fn(u8, u8) -> bool) {
        assert_ne!(x, y, "use restrict for unary constraints");
        let n = self.values;
        let mut fwd = vec![0u64; n];
        let mut rev = vec![0u64; n];
        for (a, row) in fwd.iter_mut().enumerate() {
            for (b, col) in rev.iter_mut().enumerate() {
                if allowed(a as u8, b as u8) {
                    *row |= 1 << b;
                    *col |= 1 << a;
                }
            }
        }
        let id = self.binaries.len();
        self.binaries.push(Binary { x, y, fwd, rev });
        self.watch_binary[x].push(id);
        self.watch_binary[y].push(id);
    }

    /// At least one of `vars` takes `value`.
    pub fn add_coverage(&mut self, vars: Vec<usize>, value: u8) {
        let id = self.coverage.len();
        for v in &vars {
            self.watch_coverage[*v].push(id);
        }
        self.coverage.push(Coverage { vars, value });
    }

    /// Whether `values` meets every constraint, checked directly.
    pub fn is_solution(&self, values: &[u8]) -> bool {
        values.len() == self.domains.len()
            && values.iter().zip(&self.domains).all(|(v, d)| (*v as usize) < self.values && d & 1 << v != 0)
            && self.binaries.iter().all(|b| b.fwd[values[b.x] as usize] & 1 << values[b.y] != 0)
            && self.coverage.iter().all(|c| c.vars.iter().any(|v| values[*v] == c.value))
    }

    /// Depth-first search with restarts. Variables are picked by smallest
    /// domain over conflict weight, values in ascending order; weights grow
    /// on the constraints that cause wipeouts and persist across restarts.
    /// The node limit per restart grows geometrically, so the search stays
    /// complete.
    pub fn solve(&self, budget: Budget) -> (CspOutcome, SearchStats) {
        let mut st = Search {
            budget,
            stats: SearchStats::default(),
            weights: vec![1; self.binaries.len() + self.coverage.len()],
            var_weight: vec![0; self.domains.len()],
            limit: 0,
        };
        for (c, b) in self.binaries.iter().enumerate() {
            st.var_weight[b.x] += st.weights[c];
            st.var_weight[b.y] += st.weights[c];
        }
        for cov in &self.coverage {
            for v in &cov.vars {
                st.var_weight[*v] += 1;
            }
        }
        let mut domains = self.domains.clone();
        let all: Vec<usize> = (0..domains.len()).collect();
        if self.propagate(&mut domains, all).is_err() {
            return (CspOutcome::Unsat, st.stats);
        }
        let mut run_limit = 64u64;
        loop {
            st.limit = st.stats.nodes.saturating_add(run_limit);
            match self.search(domains.clone(), &mut st) {
                Ok(Some(d)) => {
                    let values = d.iter().map(|m| m.trailing_zeros() as u8).collect();
                    return (CspOutcome::Sat(values), st.stats);
                }
                Ok(None) => return (CspOutcome::Unsat, st.stats),
                Err(Halt::Budget) => return (CspOutcome::Budget, st.stats),
                Err(Halt::Restart) => {
                    st.stats.restarts += 1;
                    run_limit = run_limit.saturating_mul(3) / 2;
                }
            }
        }
    }

    /// `Ok(None)` when the tree below `root` is exhausted.
    fn search(&self, root: Vec<u64>, st: &mut Search) -> Result<Option<Vec<u64>>, Halt> {
        let mut stack: Vec<Frame> = Vec::new();
        let mut open = Some(root);
        loop {
            if let Some(domains) = open.take() {
                st.stats.nodes += 1;
                if st.stats.nodes > st.budget.max_nodes {
                    return Err(Halt::Budget);
                }
                if st.stats.nodes.is_multiple_of(1024) && st.budget.deadline.is_some_and(|d| Instant::now() > d) {
                    return Err(Halt::Budget);
                }
                if st.stats.nodes > st.limit {
                    return Err(Halt::Restart);
                }
                let Some(var) = self.pick(&domains, st) else {
                    return Ok(Some(domains));
                };
                stack.push(Frame { rest: domains[var], var, domains });
            }
            let Some(top) = stack.last_mut() else {
                return Ok(None);
            };
            if top.rest == 0 {
                stack.pop();
                continue;
            }
            let value = top.rest.trailing_zeros();
            top.rest &= top.rest - 1;
            let mut next = top.domains.clone();
            next[top.var] = 1 << value;
            match self.propagate(&mut next, vec![top.var]) {
                Ok(()) => open = Some(next),
                Err(Conflict(Some(c))) => self.bump(c, st),
                Err(Conflict(None)) => {}
            }
        }
    }

    /// Unfixed variable with the smallest domain size over weight; ties go
    /// to the lowest index.
    fn pick(&self, domains: &[u64], st: &Search) -> Option<usize> {
        let mut pick: Option<usize> = None;
        for v in (0..domains.len()).filter(|v| domains[*v].count_ones() > 1) {
            // dom_v / w_v < dom_p / w_p, cross-multiplied
            let better = pick.is_none_or(|p| {
                (domains[v].count_ones() as u128) * (st.var_weight[p] as u128)
                    < (domains[p].count_ones() as u128) * (st.var_weight[v] as u128)
            });
            if better {
                pick = Some(v);
            }
        }
        pick
    }

    fn bump(&self, c: usize, st: &mut Search) {
        st.weights[c] += 1;
        if c < self.binaries.len() {
            st.var_weight[self.binaries[c].x] += 1;
            st.var_weight[self.binaries[c].y] += 1;
        } else {
            for v in &self.coverage[c - self.binaries.len()].vars {
                st.var_weight[*v] += 1;
            }
        }
    }

    fn propagate(&self, domains: &mut [u64], changed: Vec<usize>) -> Result<(), Conflict> {
        let mut queue: VecDeque<usize> = changed.into();
        let mut queued = vec![false; domains.len()];
        for v in &queue {
            queued[*v] = true;
        }
        while let Some(var) = queue.pop_front() {
            queued[var] = false;
            if domains[var] == 0 {
                return Err(Conflict(None));
            }
            let mut touched = Vec::new();
            for &c in &self.watch_binary[var] {
                let b = &self.binaries[c];
                let (other, table, own) = if b.x == var { (b.y, &b.fwd, b.x) } else { (b.x, &b.rev, b.y) };
                let support = mask_union(table, domains[own]);
                let narrowed = domains[other] & support;
                if narrowed != domains[other] {
                    if narrowed == 0 {
                        return Err(Conflict(Some(c)));
                    }
                    domains[other] = narrowed;
                    touched.push(other);
                }
            }
            for &c in &self.watch_coverage[var] {
                let cov = &self.coverage[c];
                let bit = 1u64 << cov.value;
                let mut holders = cov.vars.iter().filter(|v| domains[**v] & bit != 0);
                match (holders.next(), holders.next()) {
                    (None, _) => return Err(Conflict(Some(self.binaries.len() + c))),
                    (Some(&only), None) if domains[only] != bit => {
                        domains[only] = bit;
                        touched.push(only);
                    }
                    _ => {}
                }
            }
            for t in touched {
                if !queued[t] {
                    queued[t] = true;
                    queue.push_back(t);
                }
            }
        }
        Ok(())
    }
}

struct Search {
    budget: Budget,
    stats: SearchStats,
    /// Per constraint: binaries first, then coverage.
    weights: Vec<u64>,
    /// Sum of the weights of the constraints on each variable.
    var_weight: Vec<u64>,
    /// Node count at which the current run restarts.
    limit: u64,
}

struct Frame {
    domains: Vec<u64>,
    var: usize,
    /// Values not yet tried.
    rest: u64,
}

enum Halt {
    Budget,
    Restart,
}

/// Union of `table[a]` over the values `a` in `domain`.
fn mask_union(table: &[u64], domain: u64) -> u64 {
    let mut rest = domain;
    let mut out = 0;
    while rest != 0 {
        out |= table[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    out
}
