//! Checks every bound, equality condition, characterisation and grid formula
//! against the exact solvers and the column DP, over an exhaustive corpus of
//! small digraphs, seeded random digraphs and the sharpness families.
//!
//! A check only counts instances that satisfy its hypothesis. Instances whose
//! solver runs out of budget are counted as skipped, not as violations.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    check_equality_condition_2_1, check_equality_condition_2_2, check_gamma_trk_equals_k, extend_colors,
    grid_certificate, tkrdf_from_dominating_set, tkrdf_from_partitioned_td_set, tkrdf_from_td_set,
    totalize_rkdf,
};
use crate::digraph::Digraph;
use crate::error::{invalid, Error, Result};
use crate::families::{enumerate_small, random_digraph, Family};
use crate::grid::{closed_form, column_weight_profile, dp_gamma_trk, dp_gamma_trk_min_empty, GridSpec};
use crate::rainbow::{find_violation, is_dominating_set, is_total_dominating_set, RainbowAssignment};
use crate::solve::{gamma, gamma_t, RainbowSolver, SolveBudget, SolveResult};

/// Stored equality witnesses per check; the full count is always reported.
pub const WITNESS_SAMPLE: usize = 8;

pub const RANDOM_PROBABILITIES: [f64; 3] = [0.2, 0.4, 0.6];

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub digraph: Digraph,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub name: String,
    pub instances: Vec<Instance>,
}

impl Corpus {
    /// All labelled digraphs on `1..=max_n` vertices without isolated
    /// vertices; ids are `n<order>#<arc bit pattern>`.
    pub fn exhaustive(max_n: usize) -> Result<Self> {
        let mut instances = Vec::new();
        for n in 1..=max_n {
            for (bits, d) in enumerate_small(n, false)?.enumerate() {
                if !d.has_isolated_vertex() {
                    instances.push(Instance {
                        id: format!("n{n}#{bits}"),
                        digraph: d,
                    });
                }
            }
        }
        Ok(Self {
            name: format!("exhaustive n<={max_n}"),
            instances,
        })
    }

    /// `count` random digraphs with orders cycling through `2..=max_n` and
    /// arc probabilities through [`RANDOM_PROBABILITIES`]. Draws with an
    /// isolated vertex are rejected and redrawn with the next seed from the
    /// stream.
    pub fn random(count: usize, max_n: usize, seed: u64) -> Result<Self> {
        if max_n < 2 {
            return Err(invalid("random corpus needs max_n >= 2"));
        }
        let mut seeds = ChaCha8Rng::seed_from_u64(seed);
        let mut instances = Vec::with_capacity(count);
        for i in 0..count {
            let n = 2 + i % (max_n - 1);
            let p = RANDOM_PROBABILITIES[i % RANDOM_PROBABILITIES.len()];
            loop {
                let s: u64 = seeds.gen();
                let d = random_digraph(n, p, s)?;
                if !d.has_isolated_vertex() {
                    instances.push(Instance {
                        id: format!("rand{i:03}-n{n}-p{p}-s{s:016x}"),
                        digraph: d,
                    });
                    break;
                }
            }
        }
        Ok(Self {
            name: format!("random x{count} n<={max_n} seed={seed}"),
            instances,
        })
    }

    /// Small members of every generated family.
    pub fn families() -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        names.extend((2..=8).map(|n| format!("path:{n}")));
        names.extend((2..=8).map(|n| format!("cycle:{n}")));
        names.extend((2..=6).map(|n| format!("star:{n}")));
        for k in 1..=3 {
            names.push(format!("remark1:t={},k={k}", k + 1));
            for m in 1..=3 {
                names.push(format!("bipartite:k={k},m={m}"));
            }
        }
        names.extend([
            "remark2:t=2,k=1",
            "remark2:t=2,k=2",
            "remark2:t=2,k=1,sizes=3,4,seed=5",
            "thm23:t=2,k=1",
            "thm23:t=2,k=2",
            "thm23:t=3,k=1",
            "thm34:t=2,k=1,kp=2",
            "thm34:t=2,k=2,kp=3",
            "thm34:t=2,k=1,kp=3",
            "thm33:k=2",
            "thm33:k=3",
            "grid:2x2",
            "grid:2x3",
            "grid:2x4",
            "grid:3x3",
        ]
        .map(String::from));
        let instances = names
            .into_iter()
            .map(|id| {
                let digraph = id.parse::<Family>()?.generate()?;
                Ok(Instance { id, digraph })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name: "families".into(),
            instances,
        })
    }

    /// Exhaustive `n ≤ 4`, 200 random digraphs with `n ≤ 8`, and the families.
    pub fn standard(seed: u64) -> Result<Self> {
        Ok(Self::concat(vec![
            Self::exhaustive(4)?,
            Self::random(200, 8, seed)?,
            Self::families()?,
        ]))
    }

    pub fn concat(parts: Vec<Corpus>) -> Self {
        let name = parts.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(" + ");
        Self {
            name,
            instances: parts.into_iter().flat_map(|c| c.instances).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub detail: String,
    /// Edge list of the offending digraph; only filled for violations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digraph: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub statement: String,
    pub corpus: String,
    pub instances_tested: usize,
    pub skipped: usize,
    pub violations: Vec<Finding>,
    pub witness_count: usize,
    pub witnesses: Vec<Finding>,
    pub runtime_ms: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckReport>,
}

impl AuditReport {
    pub fn new(suite: impl Into<String>, seed: Option<u64>) -> Self {
        Self {
            suite: suite.into(),
            seed,
            checks: Vec::new(),
        }
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.checks.extend(other.checks);
    }

    pub fn violation_count(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }

    pub fn check(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// The report with runtimes cleared, for comparing re-runs.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.runtime_ms = None;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>7}  {:>7}  {:>10}  {:>9}  {:>8}  corpus",
            "check", "tested", "skipped", "violations", "witnesses", "ms"
        );
        for c in &self.checks {
            let ms = c.runtime_ms.map_or("-".to_string(), |m| m.to_string());
            let _ = writeln!(
                out,
                "{:<width$}  {:>7}  {:>7}  {:>10}  {:>9}  {:>8}  {}",
                c.id,
                c.instances_tested,
                c.skipped,
                c.violations.len(),
                c.witness_count,
                ms,
                c.corpus
            );
        }
        for c in self.checks.iter().filter(|c| !c.passed()) {
            let _ = writeln!(out, "\n{} ({}):", c.id, c.statement);
            for v in &c.violations {
                let k = v.k.map(|k| format!(" k={k}")).unwrap_or_default();
                let _ = writeln!(out, "  {}{}: {}", v.instance, k, v.detail);
            }
        }
        let _ = writeln!(out, "\ntotal violations: {}", self.violation_count());
        out
    }
}

// ---------------------------------------------------------------------------
// Check plumbing

enum Outcome {
    Holds,
    Equality(String),
    Violated(String),
    Skipped,
}

struct Case<'a> {
    instance: &'a Instance,
    k: Option<usize>,
    outcome: Outcome,
}

fn finish(id: &str, statement: &str, corpus: &str, start: Instant, cases: Vec<Case<'_>>) -> CheckReport {
    let mut report = CheckReport {
        id: id.into(),
        statement: statement.into(),
        corpus: corpus.into(),
        instances_tested: 0,
        skipped: 0,
        violations: Vec::new(),
        witness_count: 0,
        witnesses: Vec::new(),
        runtime_ms: None,
    };
    for case in cases {
        let finding = |detail: String, with_digraph: bool| Finding {
            instance: case.instance.id.clone(),
            k: case.k,
            detail,
            digraph: with_digraph.then(|| case.instance.digraph.to_edge_list()),
        };
        match case.outcome {
            Outcome::Skipped => report.skipped += 1,
            Outcome::Holds => report.instances_tested += 1,
            Outcome::Equality(detail) => {
                report.instances_tested += 1;
                report.witness_count += 1;
                if report.witnesses.len() < WITNESS_SAMPLE {
                    report.witnesses.push(finding(detail, false));
                }
            }
            Outcome::Violated(detail) => {
                report.instances_tested += 1;
                report.violations.push(finding(detail, true));
            }
        }
    }
    report.runtime_ms = Some(start.elapsed().as_millis() as u64);
    report
}

/// Runs `eval` on every instance in parallel; `eval` yields one outcome per
/// applicable `k` (none when the hypothesis fails).
fn run_check<'a, F>(id: &str, statement: &str, corpus: &'a Corpus, eval: F) -> CheckReport
where
    F: Fn(usize, &'a Instance) -> Vec<(Option<usize>, Outcome)> + Sync,
{
    let start = Instant::now();
    let per_instance: Vec<Vec<(Option<usize>, Outcome)>> = corpus
        .instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| eval(i, inst))
        .collect();
    let cases = corpus
        .instances
        .iter()
        .zip(per_instance)
        .flat_map(|(instance, outs)| outs.into_iter().map(move |(k, outcome)| Case { instance, k, outcome }))
        .collect();
    finish(id, statement, &corpus.name, start, cases)
}

fn outcome_of(result: Result<Outcome>) -> Outcome {
    match result {
        Ok(o) => o,
        Err(Error::BudgetExceeded { .. }) => Outcome::Skipped,
        Err(e) => Outcome::Violated(format!("error: {e}")),
    }
}

/// Equality witness when `lhs == rhs`, violation unless `holds`.
fn compare(holds: bool, equal: bool, detail: String) -> Outcome {
    match (holds, equal) {
        (false, _) => Outcome::Violated(detail),
        (true, true) => Outcome::Equality(detail),
        (true, false) => Outcome::Holds,
    }
}

fn verifier_error(d: &Digraph, f: &RainbowAssignment, total: bool) -> Option<String> {
    match find_violation(d, f, total) {
        Ok(None) => None,
        Ok(Some(v)) => Some(format!("certificate rejected: {v}")),
        Err(e) => Some(format!("certificate rejected: {e}")),
    }
}

// ---------------------------------------------------------------------------
// Solver values shared by the bound checks

struct Solved {
    gamma: SolveResult,
    gamma_t: SolveResult,
    /// `(k, γ_rk, γ_trk)` for every audited `k`.
    rainbow: Vec<(usize, SolveResult, SolveResult)>,
}

impl Solved {
    fn compute(d: &Digraph, ks: &[usize], budget: SolveBudget) -> Result<Self> {
        let rainbow = ks
            .iter()
            .map(|&k| {
                let rk = RainbowSolver::new(k, false).budget(budget).solve(d)?;
                let trk = RainbowSolver::new(k, true).budget(budget).tie_break(false).solve(d)?;
                Ok((k, rk, trk))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            gamma: gamma(d, budget)?,
            gamma_t: gamma_t(d, budget)?,
            rainbow,
        })
    }

    fn trk(&self, k: usize) -> &SolveResult {
        &self.rainbow.iter().find(|r| r.0 == k).expect("k audited").2
    }
}

fn normalize_ks(ks: &[usize]) -> Vec<usize> {
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// The inequalities relating `γ_trk` to `γ`, `γ_t`, `γ_rk`, the order, the
/// maximum out-degree and a larger colour count, each together with the
/// construction from its proof.
pub fn audit_bounds(corpus: &Corpus, ks: &[usize], budget: SolveBudget) -> Result<AuditReport> {
    let ks = normalize_ks(ks);
    if ks.is_empty() || ks[0] == 0 {
        return Err(invalid("ks must be nonempty and positive"));
    }
    let start = Instant::now();
    let solved: Vec<Option<Solved>> = corpus
        .instances
        .par_iter()
        .map(|inst| Solved::compute(&inst.digraph, &ks, budget).ok())
        .collect();
    let per_k = |i: usize, f: &dyn Fn(&Solved, usize) -> Option<Outcome>| -> Vec<(Option<usize>, Outcome)> {
        match &solved[i] {
            None => vec![(None, Outcome::Skipped)],
            Some(s) => ks.iter().filter_map(|&k| f(s, k).map(|o| (Some(k), o))).collect(),
        }
    };

    let mut report = AuditReport::new("bounds", None);

    let cert_cases = corpus
        .instances
        .iter()
        .zip(&solved)
        .flat_map(|(instance, s)| {
            let Some(s) = s else {
                return vec![Case {
                    instance,
                    k: None,
                    outcome: Outcome::Skipped,
                }];
            };
            let d = &instance.digraph;
            let mut out = Vec::new();
            let g = s.gamma.vertex_set().expect("set certificate");
            let gt = s.gamma_t.vertex_set().expect("set certificate");
            let sets_ok = is_dominating_set(d, g)
                && g.len() == s.gamma.value
                && is_total_dominating_set(d, gt)
                && gt.len() == s.gamma_t.value;
            out.push(Case {
                instance,
                k: None,
                outcome: if sets_ok {
                    Outcome::Holds
                } else {
                    Outcome::Violated("minimum set certificate rejected".into())
                },
            });
            for (k, rk, trk) in &s.rainbow {
                let mut problems = Vec::new();
                for (r, total) in [(rk, false), (trk, true)] {
                    let f = r.assignment().expect("assignment certificate");
                    if let Some(e) = verifier_error(d, f, total) {
                        problems.push(e);
                    }
                    if f.weight() != r.value || f.k() != *k {
                        problems.push(format!("certificate weight {} != value {}", f.weight(), r.value));
                    }
                }
                out.push(Case {
                    instance,
                    k: Some(*k),
                    outcome: if problems.is_empty() {
                        Outcome::Holds
                    } else {
                        Outcome::Violated(problems.join("; "))
                    },
                });
            }
            out
        })
        .collect();
    report.checks.push(finish(
        "certificates.solver",
        "every solver witness passes its verifier and has the reported weight",
        &corpus.name,
        start,
        cert_cases,
    ));

    report.checks.push(run_check(
        "upper.dominating",
        "γ_trk ≤ (k+1)γ; the construction from a γ-set S is a TkRDF of weight ≤ k|S|+|S'|",
        corpus,
        |i, inst| {
            per_k(i, &|s, k| {
                let d = &inst.digraph;
                let set = s.gamma.vertex_set().expect("set certificate");
                let value = s.trk(k).value;
                let bound = (k + 1) * s.gamma.value;
                let detail = format!("γ={} γ_trk={value} (k+1)γ={bound}", s.gamma.value);
                Some(outcome_of((|| {
                    let f = tkrdf_from_dominating_set(d, set, k)?;
                    let lonely = set
                        .iter()
                        .filter(|&v| !d.neighbors(v).iter().any(|&w| set.contains(w)))
                        .count();
                    if let Some(e) = verifier_error(d, &f, true) {
                        return Ok(Outcome::Violated(e));
                    }
                    if f.weight() > k * set.len() + lonely {
                        return Ok(Outcome::Violated(format!("construction weight {} too large", f.weight())));
                    }
                    Ok(compare(value <= bound, value == bound, detail.clone()))
                })()))
            })
        },
    ));

    report.checks.push(run_check(
        "sandwich.total",
        "n ≥ k ⇒ γ_t ≤ γ_trk ≤ kγ_t; full labels on a γ_t-set give a TkRDF of weight kγ_t",
        corpus,
        |i, inst| {
            per_k(i, &|s, k| {
                let d = &inst.digraph;
                if d.order() < k {
                    return None;
                }
                let gt = s.gamma_t.value;
                let value = s.trk(k).value;
                let detail = format!("γ_t={gt} γ_trk={value} kγ_t={}", k * gt);
                Some(outcome_of((|| {
                    let f = tkrdf_from_td_set(d, s.gamma_t.vertex_set().expect("set"), k)?;
                    if let Some(e) = verifier_error(d, &f, true) {
                        return Ok(Outcome::Violated(e));
                    }
                    if f.weight() != k * gt {
                        return Ok(Outcome::Violated(format!("construction weight {} != kγ_t", f.weight())));
                    }
                    Ok(compare(gt <= value && value <= k * gt, gt == value || value == k * gt, detail.clone()))
                })()))
            })
        },
    ));

    report.checks.push(run_check(
        "sandwich.rainbow",
        "weakly connected, n ≥ max{k,2} ⇒ γ_rk ≤ γ_trk ≤ 2γ_rk−k+1; totalizing a γ_rk-function stays within the bound",
        corpus,
        |i, inst| {
            per_k(i, &|s, k| {
                let d = &inst.digraph;
                if !d.is_weakly_connected() || d.order() < k.max(2) {
                    return None;
                }
                let (_, rk, trk) = s.rainbow.iter().find(|r| r.0 == k).expect("k audited");
                let (r, t) = (rk.value, trk.value);
                let upper = 2 * r + 1 - k;
                let detail = format!("γ_rk={r} γ_trk={t} 2γ_rk−k+1={upper}");
                Some(outcome_of((|| {
                    let g = totalize_rkdf(d, rk.assignment().expect("assignment"))?;
                    if let Some(e) = verifier_error(d, &g, true) {
                        return Ok(Outcome::Violated(e));
                    }
                    if g.weight() > upper.min(d.order()) {
                        return Ok(Outcome::Violated(format!("totalized weight {} exceeds bound", g.weight())));
                    }
                    Ok(compare(r <= t && t <= upper, r == t || t == upper, detail.clone()))
                })()))
            })
        },
    ));

    report.checks.push(run_check(
        "range.order",
        "min{k,n} ≤ γ_trk ≤ n",
        corpus,
        |i, inst| {
            per_k(i, &|s, k| {
                let n = inst.digraph.order();
                let value = s.trk(k).value;
                let lower = k.min(n);
                Some(compare(
                    lower <= value && value <= n,
                    value == lower || value == n,
                    format!("n={n} γ_trk={value}"),
                ))
            })
        },
    ));

    report.checks.push(run_check(
        "lower.out_degree",
        "γ_trk ≥ ⌈(kn+1)/(Δ^+ + k)⌉",
        corpus,
        |i, inst| {
            per_k(i, &|s, k| {
                let d = &inst.digraph;
                let max_out = d.degrees().ok()?.max_out;
                let bound = ceil_div(k * d.order() + 1, max_out + k);
                let value = s.trk(k).value;
                Some(compare(value >= bound, value == bound, format!("γ_trk={value} bound={bound}")))
            })
        },
    ));

    report.checks.push(run_check(
        "upper.color_extension",
        "k < k' ⇒ γ_trk' ≤ γ_trk + (k'−k)⌊γ_trk/k⌋; extending the smallest colour class stays within it",
        corpus,
        |i, inst| match &solved[i] {
            None => vec![(None, Outcome::Skipped)],
            Some(s) => {
                let d = &inst.digraph;
                let mut out = Vec::new();
                for &k in &ks {
                    for &kp in ks.iter().filter(|&&kp| kp > k) {
                        let (a, b) = (s.trk(k).value, s.trk(kp).value);
                        let bound = a + (kp - k) * (a / k);
                        let detail = format!("k'={kp} γ_trk={a} γ_trk'={b} bound={bound}");
                        let outcome = outcome_of((|| {
                            let g = extend_colors(d, s.trk(k).assignment().expect("assignment"), kp)?;
                            if let Some(e) = verifier_error(d, &g, true) {
                                return Ok(Outcome::Violated(e));
                            }
                            if g.weight() > bound {
                                return Ok(Outcome::Violated(format!("extended weight {} exceeds bound", g.weight())));
                            }
                            Ok(compare(b <= bound, b == bound, detail.clone()))
                        })());
                        out.push((Some(k), outcome));
                    }
                }
                out
            }
        },
    ));

    report.checks.push(run_check(
        "reduction.k1",
        "γ_tr1 = γ_t",
        corpus,
        |i, _| {
            per_k(i, &|s, k| {
                (k == 1).then(|| {
                    let (a, b) = (s.trk(1).value, s.gamma_t.value);
                    compare(a == b, false, format!("γ_tr1={a} γ_t={b}"))
                })
            })
        },
    ));

    Ok(report)
}

struct SharpCase {
    family: &'static str,
    k: usize,
    claim: &'static str,
}

const SHARP_CASES: &[SharpCase] = &[
    SharpCase { family: "remark2:t=2,k=2", k: 2, claim: "dominating" },
    SharpCase { family: "remark2:t=2,k=1", k: 1, claim: "dominating" },
    SharpCase { family: "remark2:t=2,k=1,sizes=3,5,seed=3", k: 1, claim: "dominating" },
    SharpCase { family: "thm23:t=2,k=2", k: 2, claim: "rainbow_lower" },
    SharpCase { family: "thm23:t=3,k=1,sizes=2,3,2", k: 1, claim: "rainbow_lower" },
    SharpCase { family: "bipartite:k=2,m=3", k: 2, claim: "rainbow_upper" },
    SharpCase { family: "bipartite:k=3,m=2", k: 3, claim: "rainbow_upper" },
    SharpCase { family: "bipartite:k=1,m=3", k: 1, claim: "rainbow_upper" },
    SharpCase { family: "thm33:k=2", k: 2, claim: "out_degree" },
    SharpCase { family: "thm33:k=3", k: 3, claim: "out_degree" },
    SharpCase { family: "path:3", k: 1, claim: "out_degree" },
    SharpCase { family: "thm34:t=2,k=1,kp=2", k: 1, claim: "color_extension" },
    SharpCase { family: "thm34:t=2,k=2,kp=3", k: 2, claim: "color_extension" },
    SharpCase { family: "path:2", k: 3, claim: "order_range" },
    SharpCase { family: "cycle:3", k: 3, claim: "order_range" },
];

/// Each bound claimed to be sharp is attained with equality by its family.
pub fn audit_sharpness(budget: SolveBudget) -> Result<AuditReport> {
    let start = Instant::now();
    let instances = SHARP_CASES
        .iter()
        .map(|c| {
            Ok(Instance {
                id: c.family.to_string(),
                digraph: c.family.parse::<Family>()?.generate()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let outcomes: Vec<Outcome> = SHARP_CASES
        .par_iter()
        .zip(&instances)
        .map(|(case, inst)| outcome_of(sharp_outcome(case, inst, budget)))
        .collect();
    let cases = instances
        .iter()
        .zip(SHARP_CASES)
        .zip(outcomes)
        .map(|((instance, c), outcome)| Case {
            instance,
            k: Some(c.k),
            outcome,
        })
        .collect();
    let mut report = AuditReport::new("sharpness", None);
    report.checks.push(finish(
        "sharpness.families",
        "every bound claimed sharp is attained by its family",
        "sharpness families",
        start,
        cases,
    ));
    Ok(report)
}

fn sharp_outcome(case: &SharpCase, inst: &Instance, budget: SolveBudget) -> Result<Outcome> {
    let d = &inst.digraph;
    let k = case.k;
    let trk = |k| RainbowSolver::new(k, true).budget(budget).tie_break(false).solve(d);
    let t = trk(k)?.value;
    let (lhs, rhs, what) = match case.claim {
        "dominating" => (t, (k + 1) * gamma(d, budget)?.value, "γ_trk = (k+1)γ"),
        "rainbow_lower" => (t, RainbowSolver::new(k, false).budget(budget).solve(d)?.value, "γ_trk = γ_rk"),
        "rainbow_upper" => {
            let r = RainbowSolver::new(k, false).budget(budget).solve(d)?.value;
            (t, 2 * r + 1 - k, "γ_trk = 2γ_rk−k+1")
        }
        "out_degree" => {
            let bound = ceil_div(k * d.order() + 1, d.degrees()?.max_out + k);
            (t, bound, "γ_trk = ⌈(kn+1)/(Δ^++k)⌉")
        }
        "color_extension" => {
            let Ok(Family::ExtensionSharpStars { k_prime, .. }) = case.family.parse::<Family>() else {
                unreachable!("extension cases use the extension family")
            };
            (trk(k_prime)?.value, t + (k_prime - k) * (t / k), "γ_trk' = γ_trk + (k'−k)⌊γ_trk/k⌋")
        }
        _ => (t, k.min(d.order()), "γ_trk = min{k,n}"),
    };
    let detail = format!("{what}: {lhs} vs {rhs}");
    Ok(if lhs == rhs {
        Outcome::Equality(detail)
    } else {
        Outcome::Violated(detail)
    })
}

/// `Δ^− ≥ Δ^+ ≥ 1` and `k > (Δ^−)²` force `γ_trk = n`.
pub fn audit_corollary_full_weight(corpus: &Corpus, ks: &[usize], budget: SolveBudget) -> Result<AuditReport> {
    let ks = normalize_ks(ks);
    let mut report = AuditReport::new("corollaries", None);
    report.checks.push(run_check(
        "full_weight.degree",
        "Δ^− ≥ Δ^+ ≥ 1 and k > (Δ^−)² ⇒ γ_trk = n",
        corpus,
        |_, inst| {
            let d = &inst.digraph;
            let Ok(deg) = d.degrees() else { return Vec::new() };
            ks.iter()
                .filter(|&&k| deg.max_in >= deg.max_out && deg.max_out >= 1 && k > deg.max_in * deg.max_in)
                .map(|&k| {
                    let outcome = outcome_of((|| {
                        let v = RainbowSolver::new(k, true).budget(budget).tie_break(false).solve(d)?.value;
                        Ok(compare(v == d.order(), true, format!("n={} γ_trk={v}", d.order())))
                    })());
                    (Some(k), outcome)
                })
                .collect()
        },
    ));
    Ok(report)
}

/// Structural conditions from the constructions module against solver values.
pub fn audit_characterizations(corpus: &Corpus, ks: &[usize], budget: SolveBudget) -> Result<AuditReport> {
    let ks = normalize_ks(ks);
    let mut report = AuditReport::new("characterizations", None);

    report.checks.push(run_check(
        "characterization.equals_k",
        "k ≥ 2: γ_trk = k iff n = k or a set X, 2 ≤ |X| ≤ k, without isolated vertices has every member pointing to all of V∖X",
        corpus,
        |_, inst| {
            let d = &inst.digraph;
            ks.iter()
                .filter(|&&k| k >= 2)
                .map(|&k| {
                    let outcome = outcome_of((|| {
                        let c = check_gamma_trk_equals_k(d, k)?;
                        let v = RainbowSolver::new(k, true).budget(budget).tie_break(false).solve(d)?.value;
                        if let Some(f) = &c.certificate {
                            if let Some(e) = verifier_error(d, f, true) {
                                return Ok(Outcome::Violated(e));
                            }
                            if f.weight() != k {
                                return Ok(Outcome::Violated(format!("certificate weight {} != k", f.weight())));
                            }
                        }
                        let detail = format!("structural={} γ_trk={v}", c.holds);
                        Ok(compare(c.holds == (v == k), c.holds, detail))
                    })());
                    (Some(k), outcome)
                })
                .collect()
        },
    ));

    report.checks.push(run_check(
        "equality.packing",
        "γ_trk = (k+1)γ ⇒ every γ-set is a packing",
        corpus,
        |_, inst| {
            ks.iter()
                .map(|&k| {
                    let outcome = outcome_of((|| {
                        let r = check_equality_condition_2_1(&inst.digraph, k, budget)?;
                        let detail = format!(
                            "γ={} γ_trk={} γ-sets={} all packings={}",
                            r.gamma, r.gamma_trk, r.gamma_sets, r.all_gamma_sets_are_packings
                        );
                        Ok(compare(!r.violation, r.equality, detail))
                    })());
                    (Some(k), outcome)
                })
                .collect()
        },
    ));

    report.checks.push(run_check(
        "equality.total",
        "n ≥ k: γ_trk = γ_t iff a γ_t-set splits into k parts each reaching V∖X; γ_trk = kγ_t iff an optimum uses only ∅ and {1..k}",
        corpus,
        |_, inst| {
            let d = &inst.digraph;
            ks.iter()
                .filter(|&&k| d.order() >= k)
                .map(|&k| {
                    let outcome = outcome_of((|| {
                        let r = check_equality_condition_2_2(d, k, budget)?;
                        if let Some(parts) = &r.partition {
                            let g = tkrdf_from_partitioned_td_set(d, parts, k)?;
                            if let Some(e) = verifier_error(d, &g, true) {
                                return Ok(Outcome::Violated(e));
                            }
                        }
                        if let Some(f) = &r.two_valued_optimum {
                            if let Some(e) = verifier_error(d, f, true) {
                                return Ok(Outcome::Violated(e));
                            }
                        }
                        let detail = format!(
                            "γ_t={} γ_trk={} partition={} two-valued={}",
                            r.gamma_t,
                            r.gamma_trk,
                            r.partition.is_some(),
                            r.two_valued_optimum.is_some()
                        );
                        Ok(compare(r.consistent, r.lower_equality || r.upper_equality, detail))
                    })());
                    (Some(k), outcome)
                })
                .collect()
        },
    ));

    Ok(report)
}

/// Row/colour pairs with a proven closed form.
pub const COVERED_GRIDS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];

fn grid_instance(spec: GridSpec) -> Result<Instance> {
    Ok(Instance {
        id: format!("grid:{}x{} k={}", spec.rows, spec.cols, spec.k),
        digraph: spec.digraph()?,
    })
}

/// Column DP against the closed forms, the explicit certificates and (on
/// small grids) the branch-and-bound solver.
pub fn audit_grid_formulas(n_max: usize, budget: SolveBudget) -> Result<AuditReport> {
    let mut report = AuditReport::new("grids", None);
    let mut specs = Vec::new();
    for (m, k) in COVERED_GRIDS {
        for n in m..=n_max {
            specs.push(GridSpec::new(m, n, k)?);
        }
    }
    let insts = specs.iter().map(|&s| grid_instance(s)).collect::<Result<Vec<_>>>()?;

    let start = Instant::now();
    let outcomes: Vec<Outcome> = specs
        .par_iter()
        .map(|&spec| {
            outcome_of((|| {
                let r = dp_gamma_trk(spec)?;
                let formula = closed_form(spec).expect("covered");
                let f = r.assignment().expect("assignment");
                if let Some(e) = verifier_error(&spec.digraph()?, f, true) {
                    return Ok(Outcome::Violated(e));
                }
                Ok(compare(r.value == formula, true, format!("dp={} formula={formula}", r.value)))
            })())
        })
        .collect();
    report.checks.push(finish(
        "grid.closed_form",
        "column DP equals the closed form and its witness verifies",
        "covered grids",
        start,
        zip_cases(&insts, &specs, outcomes),
    ));

    let start = Instant::now();
    let outcomes: Vec<Outcome> = specs
        .par_iter()
        .map(|&spec| {
            outcome_of((|| {
                let f = grid_certificate(spec)?;
                let formula = closed_form(spec).expect("covered");
                if let Some(e) = verifier_error(&spec.digraph()?, &f, true) {
                    return Ok(Outcome::Violated(e));
                }
                Ok(compare(f.weight() == formula, true, format!("weight={}", f.weight())))
            })())
        })
        .collect();
    report.checks.push(finish(
        "grid.certificate",
        "the explicit grid assignment verifies and has the closed-form weight",
        "covered grids",
        start,
        zip_cases(&insts, &specs, outcomes),
    ));

    let oracle_specs = oracle_grid_specs(n_max.min(ORACLE_N_MAX))?;
    let oracle_insts = oracle_specs.iter().map(|&s| grid_instance(s)).collect::<Result<Vec<_>>>()?;
    let start = Instant::now();
    let outcomes: Vec<Outcome> = oracle_specs
        .par_iter()
        .map(|&spec| {
            outcome_of((|| {
                let dp = dp_gamma_trk(spec)?.value;
                let exact = RainbowSolver::new(spec.k, true)
                    .budget(budget)
                    .tie_break(false)
                    .solve(&spec.digraph()?)?
                    .value;
                Ok(compare(dp == exact, true, format!("dp={dp} exact={exact}")))
            })())
        })
        .collect();
    report.checks.push(finish(
        "grid.oracle",
        "column DP equals branch and bound",
        &format!("grids m<=3, k<=3, n<={}", n_max.min(ORACLE_N_MAX)),
        start,
        zip_cases(&oracle_insts, &oracle_specs, outcomes),
    ));
    Ok(report)
}

/// Grids `P_m □ P_n` with `m ≤ 3`, `k ≤ 3`, `n ≤ n_max` and no isolated vertex.
pub fn oracle_grid_specs(n_max: usize) -> Result<Vec<GridSpec>> {
    let mut specs = Vec::new();
    for m in 1..=3 {
        for k in 1..=3 {
            for n in 1..=n_max {
                if m * n >= 2 {
                    specs.push(GridSpec::new(m, n, k)?);
                }
            }
        }
    }
    Ok(specs)
}

/// Largest column count cross-checked against branch and bound.
pub const ORACLE_N_MAX: usize = 5;

fn zip_cases<'a>(insts: &'a [Instance], specs: &[GridSpec], outcomes: Vec<Outcome>) -> Vec<Case<'a>> {
    insts
        .iter()
        .zip(specs)
        .zip(outcomes)
        .map(|((instance, s), outcome)| Case {
            instance,
            k: Some(s.k),
            outcome,
        })
        .collect()
}

/// Column sums of the fewest-`∅` optimum: `a_0 ≥ 2` and `a_j + a_{j+1} ≥ 3`
/// for `(2, 2)`; `a_j ≥ 2` for `(2, 3)`; sums of three consecutive columns
/// at least 8 for `(3, 3)`.
pub fn audit_column_lemmas(n_max: usize) -> Result<AuditReport> {
    let mut specs = Vec::new();
    for (m, k) in COVERED_GRIDS {
        for n in m..=n_max {
            specs.push(GridSpec::new(m, n, k)?);
        }
    }
    let insts = specs.iter().map(|&s| grid_instance(s)).collect::<Result<Vec<_>>>()?;
    let start = Instant::now();
    let outcomes: Vec<Outcome> = specs
        .par_iter()
        .map(|&spec| {
            outcome_of((|| {
                let r = dp_gamma_trk_min_empty(spec)?;
                let a = column_weight_profile(r.assignment().expect("assignment"), spec)?;
                let ok = match (spec.rows, spec.k) {
                    (2, 2) => a[0] >= 2 && a.windows(2).all(|w| w[0] + w[1] >= 3),
                    (2, 3) => a.iter().all(|&x| x >= 2),
                    _ => a.windows(3).all(|w| w.iter().sum::<usize>() >= 8),
                };
                Ok(compare(ok, false, format!("profile={a:?}")))
            })())
        })
        .collect();
    let mut report = AuditReport::new("lemmas", None);
    report.checks.push(finish(
        "lemma.columns",
        "column sums of the fewest-∅ optimum meet the per-column lower bounds",
        "covered grids",
        start,
        zip_cases(&insts, &specs, outcomes),
    ));
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bounds,
    Corollaries,
    Characterizations,
    Grids,
    Lemmas,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bounds" => Suite::Bounds,
            "corollaries" => Suite::Corollaries,
            "characterizations" => Suite::Characterizations,
            "grids" => Suite::Grids,
            "lemmas" => Suite::Lemmas,
            "all" => Suite::All,
            other => return Err(invalid(format!("unknown suite {other:?}"))),
        })
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Corollaries => "corollaries",
            Suite::Characterizations => "characterizations",
            Suite::Grids => "grids",
            Suite::Lemmas => "lemmas",
            Suite::All => "all",
        }
    }
}

pub const DEFAULT_KS: [usize; 3] = [1, 2, 3];
pub const GRID_N_MAX: usize = 12;
pub const LEMMA_N_MAX: usize = 10;

/// Runs a suite on the standard corpus for `seed` with `k ∈ {1, 2, 3}`.
pub fn run_suite(suite: Suite, seed: u64, budget: SolveBudget) -> Result<AuditReport> {
    let mut report = AuditReport::new(suite.name(), Some(seed));
    let needs_corpus = matches!(
        suite,
        Suite::Bounds | Suite::Corollaries | Suite::Characterizations | Suite::All
    );
    let corpus = if needs_corpus {
        Some(Corpus::standard(seed)?)
    } else {
        None
    };
    let ks = DEFAULT_KS;
    let all = suite == Suite::All;
    if let Some(corpus) = &corpus {
        if all || suite == Suite::Bounds {
            report.extend(audit_bounds(corpus, &ks, budget)?);
            report.extend(audit_sharpness(budget)?);
        }
        if all || suite == Suite::Corollaries {
            report.extend(audit_corollary_full_weight(corpus, &ks, budget)?);
        }
        if all || suite == Suite::Characterizations {
            report.extend(audit_characterizations(corpus, &ks, budget)?);
        }
    }
    if all || suite == Suite::Grids {
        report.extend(audit_grid_formulas(GRID_N_MAX, budget)?);
    }
    if all || suite == Suite::Lemmas {
        report.extend(audit_column_lemmas(LEMMA_N_MAX)?);
    }
    Ok(report)
}
