//! Exact solvers for the four domination parameters.
//!
//! `gamma` and `gamma_t` enumerate vertex subsets by increasing size over
//! one-word bit masks. `gamma_rk` and `gamma_trk` run a depth-first
//! branch-and-bound over colour sets. The two routes share no code, so
//! `gamma_trk(D, 1) == gamma_t(D)` is a meaningful cross-check.
//!
//! Every solver is exact or fails with [`Error::BudgetExceeded`]; none of them
//! returns an unproven value.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{invalid, Error, Incumbent, Result};
use crate::rainbow::{ColorSet, RainbowAssignment, MAX_COLORS};
use crate::vertex_set::VertexSet;

/// Largest order accepted by the exhaustive solvers.
pub const MAX_SEARCH_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_nodes: u64,
    pub time_cap: Duration,
}

impl SolveBudget {
    pub fn new(max_nodes: u64, time_cap: Duration) -> Result<Self> {
        if max_nodes == 0 || time_cap.is_zero() {
            return Err(invalid("search budgets must be positive"));
        }
        Ok(Self { max_nodes, time_cap })
    }
}

impl Default for SolveBudget {
    fn default() -> Self {
        Self {
            max_nodes: 1_000_000_000,
            time_cap: Duration::from_secs(300),
        }
    }
}

/// Witness of an optimum: a vertex set for `γ`/`γ_t`, an assignment otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Certificate {
    Set(VertexSet),
    Assignment(RainbowAssignment),
}

impl Certificate {
    pub fn weight(&self) -> usize {
        match self {
            Certificate::Set(s) => s.len(),
            Certificate::Assignment(f) => f.weight(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub certificate: Certificate,
    pub nodes_explored: u64,
    /// Fewest `∅` labels over all optimal assignments, when it was computed.
    pub tie_break_empty_count: Option<usize>,
}

impl SolveResult {
    pub fn assignment(&self) -> Option<&RainbowAssignment> {
        match &self.certificate {
            Certificate::Assignment(f) => Some(f),
            Certificate::Set(_) => None,
        }
    }

    pub fn vertex_set(&self) -> Option<&VertexSet> {
        match &self.certificate {
            Certificate::Set(s) => Some(s),
            Certificate::Assignment(_) => None,
        }
    }
}

/// Descending out-degree, ties by ascending index.
pub fn branch_order(d: &Digraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(d.out_degree(v)), v));
    order
}

fn check_search_order(d: &Digraph) -> Result<()> {
    if d.order() == 0 {
        return Err(invalid("the digraph has no vertices"));
    }
    if d.order() > MAX_SEARCH_ORDER {
        return Err(invalid(format!(
            "exhaustive search supports at most {MAX_SEARCH_ORDER} vertices, got {}",
            d.order()
        )));
    }
    Ok(())
}

fn check_k(k: usize) -> Result<()> {
    if !(1..=MAX_COLORS).contains(&k) {
        return Err(invalid(format!("k = {k} outside 1..={MAX_COLORS}")));
    }
    Ok(())
}

struct Clock {
    budget: SolveBudget,
    start: Instant,
    nodes: u64,
}

impl Clock {
    fn new(budget: SolveBudget) -> Self {
        Self {
            budget,
            start: Instant::now(),
            nodes: 0,
        }
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return false;
        }
        self.nodes & 0x3ff != 0 || self.start.elapsed() <= self.budget.time_cap
    }
}

// ---------------------------------------------------------------------------
// Vertex-subset search for γ and γ_t.

struct SubsetProblem {
    n: usize,
    all: u64,
    closed_out: Vec<u64>,
    adjacent: Vec<u64>,
    total: bool,
}

impl SubsetProblem {
    fn new(d: &Digraph, total: bool) -> Self {
        let n = d.order();
        let mut closed_out = vec![0u64; n];
        let mut adjacent = vec![0u64; n];
        for v in 0..n {
            closed_out[v] = 1 << v;
            for &w in d.out_neighbors(v) {
                closed_out[v] |= 1 << w;
                adjacent[v] |= 1 << w;
                adjacent[w] |= 1 << v;
            }
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self {
            n,
            all,
            closed_out,
            adjacent,
            total,
        }
    }

    fn accepts(&self, mask: u64) -> bool {
        let mut covered = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.total && self.adjacent[v] & mask == 0 {
                return false;
            }
            covered |= self.closed_out[v];
        }
        covered == self.all
    }

    /// Masks of size `size` in increasing numeric order.
    fn combinations(&self, size: usize) -> impl Iterator<Item = u64> {
        let limit = 1u128 << self.n;
        let first = if size == 0 { 0u128 } else { (1u128 << size) - 1 };
        let mut next = Some(first).filter(|&x| x < limit);
        std::iter::from_fn(move || {
            let x = next?;
            next = if x == 0 {
                None
            } else {
                let c = x & x.wrapping_neg();
                let r = x + c;
                Some((((r ^ x) >> 2) / c) | r).filter(|&y| y < limit)
            };
            Some(x as u64)
        })
    }

    /// Smallest accepted size together with every accepted mask of that size
    /// (only the first one unless `collect_all`).
    fn minimum(&self, clock: &mut Clock, collect_all: bool) -> Result<(usize, Vec<u64>)> {
        for size in 0..=self.n {
            let mut found = Vec::new();
            for mask in self.combinations(size) {
                if !clock.tick() {
                    return Err(Error::BudgetExceeded {
                        nodes: clock.nodes,
                        // the full vertex set is always (totally) dominating here
                        incumbent: Some(Box::new(match found.first() {
                            Some(&m) => Incumbent {
                                value: size,
                                certificate: Certificate::Set(VertexSet::from_mask(self.n, m)),
                            },
                            None => Incumbent {
                                value: self.n,
                                certificate: Certificate::Set(VertexSet::full(self.n)),
                            },
                        })),
                    });
                }
                if self.accepts(mask) {
                    found.push(mask);
                    if !collect_all {
                        break;
                    }
                }
            }
            if !found.is_empty() {
                return Ok((size, found));
            }
        }
        unreachable!("the full vertex set always dominates")
    }
}

fn subset_solve(d: &Digraph, total: bool, budget: SolveBudget) -> Result<SolveResult> {
    check_search_order(d)?;
    if total {
        d.require_no_isolated()?;
    }
    let problem = SubsetProblem::new(d, total);
    let mut clock = Clock::new(budget);
    let (value, masks) = problem.minimum(&mut clock, false)?;
    Ok(SolveResult {
        value,
        certificate: Certificate::Set(VertexSet::from_mask(d.order(), masks[0])),
        nodes_explored: clock.nodes,
        tie_break_empty_count: None,
    })
}

/// Domination number `γ(D)` with a minimum dominating set.
pub fn gamma(d: &Digraph, budget: SolveBudget) -> Result<SolveResult> {
    subset_solve(d, false, budget)
}

/// Total domination number `γ_t(D)` with a minimum total dominating set.
pub fn gamma_t(d: &Digraph, budget: SolveBudget) -> Result<SolveResult> {
    subset_solve(d, true, budget)
}

/// All minimum dominating sets (`total = false`) or all minimum total
/// dominating sets (`total = true`), in increasing mask order.
pub fn minimum_sets(d: &Digraph, total: bool, budget: SolveBudget) -> Result<Vec<VertexSet>> {
    check_search_order(d)?;
    if total {
        d.require_no_isolated()?;
    }
    let problem = SubsetProblem::new(d, total);
    let mut clock = Clock::new(budget);
    let (_, masks) = problem.minimum(&mut clock, true)?;
    Ok(masks
        .into_iter()
        .map(|m| VertexSet::from_mask(d.order(), m))
        .collect())
}

// ---------------------------------------------------------------------------
// Colour-set branch and bound for γ_rk and γ_trk.

/// Configurable rainbow search; [`gamma_rk`] and [`gamma_trk`] are shorthands.
#[derive(Debug, Clone, Copy)]
pub struct RainbowSolver {
    pub k: usize,
    /// Require the labelled vertices to induce no isolated vertex.
    pub total: bool,
    pub budget: SolveBudget,
    /// Run the second search for the fewest `∅` labels among optima.
    pub tie_break: bool,
}

impl RainbowSolver {
    pub fn new(k: usize, total: bool) -> Self {
        Self {
            k,
            total,
            budget: SolveBudget::default(),
            tie_break: total,
        }
    }

    pub fn budget(mut self, budget: SolveBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn tie_break(mut self, on: bool) -> Self {
        self.tie_break = on;
        self
    }

    pub fn solve(&self, d: &Digraph) -> Result<SolveResult> {
        check_search_order(d)?;
        check_k(self.k)?;
        if self.total {
            d.require_no_isolated()?;
        }
        let mut search = Search::new(d, self.k, self.total, self.budget);
        search.run(Mode::MinWeight);
        let to_assignment = |values: &[u16]| {
            RainbowAssignment::new(self.k, values.iter().map(|&b| ColorSet::from_bits(b)).collect())
                .expect("search labels stay within k")
        };
        if search.aborted {
            return Err(Error::BudgetExceeded {
                nodes: search.clock.nodes,
                incumbent: Some(Box::new(Incumbent {
                    value: search.best_weight,
                    certificate: Certificate::Assignment(to_assignment(&search.best)),
                })),
            });
        }
        let value = search.best_weight;
        let certificate = to_assignment(&search.best);
        let mut nodes = search.clock.nodes;
        let tie_break_empty_count = if self.tie_break {
            let empties = certificate.empty_count();
            search.reset_for(Mode::MinEmpties { weight: value }, empties);
            search.run(Mode::MinEmpties { weight: value });
            nodes += search.clock.nodes;
            (!search.aborted).then_some(search.best_empties)
        } else {
            None
        };
        Ok(SolveResult {
            value,
            certificate: Certificate::Assignment(certificate),
            nodes_explored: nodes,
            tie_break_empty_count,
        })
    }
}

/// k-rainbow domination number `γ_rk(D)`.
pub fn gamma_rk(d: &Digraph, k: usize, budget: SolveBudget) -> Result<SolveResult> {
    RainbowSolver::new(k, false).budget(budget).solve(d)
}

/// Total k-rainbow domination number `γ_trk(D)`, including the minimum number
/// of `∅` labels over optimal assignments when the budget allows.
pub fn gamma_trk(d: &Digraph, k: usize, budget: SolveBudget) -> Result<SolveResult> {
    RainbowSolver::new(k, true).budget(budget).solve(d)
}

#[derive(Debug, Clone, Copy)]
enum Mode {
    MinWeight,
    /// Weight pinned to the optimum; minimise the number of `∅` labels.
    MinEmpties { weight: usize },
}

struct Search<'a> {
    d: &'a Digraph,
    n: usize,
    full: u16,
    order: Vec<usize>,
    /// Vertices whose coverage is decided once position `p` is assigned.
    cover_checks: Vec<Vec<usize>>,
    /// Vertices whose isolation is decided once position `p` is assigned.
    iso_checks: Vec<Vec<usize>>,
    /// Unassigned in-degree-0 vertices at positions `>= p`.
    sources_from: Vec<usize>,
    candidates: Vec<u16>,
    values: Vec<u16>,
    seen: Vec<u16>,
    trail: Vec<(usize, u16)>,
    empty_stack: Vec<usize>,
    used: u16,
    weight: usize,
    best_weight: usize,
    best_empties: usize,
    best: Vec<u16>,
    clock: Clock,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(d: &'a Digraph, k: usize, total: bool, budget: SolveBudget) -> Self {
        let n = d.order();
        let order = branch_order(d);
        let mut pos = vec![0usize; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut cover_checks = vec![Vec::new(); n];
        let mut iso_checks = vec![Vec::new(); n];
        for v in 0..n {
            let cover_at = d.in_neighbors(v).iter().map(|&u| pos[u]).fold(pos[v], usize::max);
            cover_checks[cover_at].push(v);
            if total {
                let iso_at = d.out_neighbors(v).iter().map(|&u| pos[u]).fold(cover_at, usize::max);
                iso_checks[iso_at].push(v);
            }
        }
        let mut sources_from = vec![0usize; n + 1];
        for p in (0..n).rev() {
            sources_from[p] = sources_from[p + 1] + usize::from(d.in_degree(order[p]) == 0);
        }
        let full = ColorSet::full(k).bits();
        let mut candidates: Vec<u16> = (0..=full).collect();
        candidates.sort_by_key(|&c| (c.count_ones(), c));
        Self {
            d,
            n,
            full,
            order,
            cover_checks,
            iso_checks,
            sources_from,
            candidates,
            values: vec![0; n],
            seen: vec![0; n],
            trail: Vec::new(),
            empty_stack: Vec::new(),
            used: 0,
            weight: 0,
            // Labelling every vertex {1} is always feasible here.
            best_weight: n,
            best_empties: 0,
            best: vec![1; n],
            clock: Clock::new(budget),
            aborted: false,
        }
    }

    fn reset_for(&mut self, mode: Mode, known_empties: usize) {
        debug_assert!(matches!(mode, Mode::MinEmpties { .. }));
        self.best_empties = known_empties;
        self.clock = Clock::new(self.clock.budget);
        self.aborted = false;
    }

    fn run(&mut self, mode: Mode) {
        self.dfs(0, mode);
    }

    /// Colours not yet used, lowest first, must be introduced as a prefix:
    /// relabelling colours maps any assignment to one obeying this rule.
    fn canonical(&self, c: u16) -> bool {
        let fresh = c & !self.used;
        let mut unused = self.full & !self.used;
        let mut prefix = 0u16;
        for _ in 0..fresh.count_ones() {
            let low = unused & unused.wrapping_neg();
            prefix |= low;
            unused &= !low;
        }
        fresh == prefix
    }

    fn lower_bound(&self, next: usize) -> usize {
        let missing = self
            .empty_stack
            .iter()
            .map(|&v| (self.full & !self.seen[v]).count_ones() as usize)
            .max()
            .unwrap_or(0);
        missing.max(self.sources_from[next])
    }

    fn feasible(&self, p: usize) -> bool {
        let covered = self.cover_checks[p]
            .iter()
            .all(|&w| self.values[w] != 0 || self.seen[w] == self.full);
        covered
            && self.iso_checks[p].iter().all(|&w| {
                self.values[w] == 0
                    || self
                        .d
                        .out_neighbors(w)
                        .iter()
                        .chain(self.d.in_neighbors(w))
                        .any(|&u| self.values[u] != 0)
            })
    }

    fn dfs(&mut self, p: usize, mode: Mode) {
        if p == self.n {
            let empties = self.empty_stack.len();
            match mode {
                Mode::MinWeight if self.weight < self.best_weight => {
                    self.best_weight = self.weight;
                    self.best.copy_from_slice(&self.values);
                }
                Mode::MinEmpties { weight } if self.weight == weight && empties < self.best_empties => {
                    self.best_empties = empties;
                    self.best.copy_from_slice(&self.values);
                }
                _ => {}
            }
            return;
        }
        let v = self.order[p];
        for i in 0..self.candidates.len() {
            let c = self.candidates[i];
            let w = self.weight + c.count_ones() as usize;
            let too_heavy = match mode {
                Mode::MinWeight => w >= self.best_weight,
                Mode::MinEmpties { weight } => w > weight,
            };
            // candidates are sorted by size, so nothing later fits either
            if too_heavy {
                break;
            }
            if !self.canonical(c) {
                continue;
            }
            if !self.clock.tick() {
                self.aborted = true;
                return;
            }

            let saved_used = self.used;
            let mark = self.trail.len();
            self.values[v] = c;
            self.weight = w;
            self.used |= c;
            for &u in self.d.out_neighbors(v) {
                self.trail.push((u, self.seen[u]));
                self.seen[u] |= c;
            }
            if c == 0 {
                self.empty_stack.push(v);
            }

            if self.feasible(p) && self.within_bound(p + 1, mode) {
                self.dfs(p + 1, mode);
            }

            if c == 0 {
                self.empty_stack.pop();
            }
            while self.trail.len() > mark {
                let (u, old) = self.trail.pop().expect("trail entry");
                self.seen[u] = old;
            }
            self.used = saved_used;
            self.weight -= c.count_ones() as usize;
            self.values[v] = 0;
            if self.aborted {
                return;
            }
        }
    }

    fn within_bound(&self, next: usize, mode: Mode) -> bool {
        let lb = self.lower_bound(next);
        match mode {
            Mode::MinWeight => self.weight + lb < self.best_weight,
            Mode::MinEmpties { weight } => {
                if self.weight + lb > weight {
                    return false;
                }
                // at most `weight - self.weight` of the remaining vertices can be labelled
                let remaining = self.n - next;
                let forced_empty = remaining.saturating_sub(weight - self.weight);
                self.empty_stack.len() + forced_empty < self.best_empties
            }
        }
    }
}
