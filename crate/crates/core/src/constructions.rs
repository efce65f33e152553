//! Constructive proofs as functions. Each builder returns an assignment that
//! the verifier accepts and whose weight meets the bound of its argument.
//! The `check_*` functions decide the structural side of the equality
//! conditions and characterisations so they can be compared against the
//! solvers.
//!
//! Where an argument says "choose some neighbour", the smallest index is
//! taken, out-neighbours before in-neighbours.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{invalid, Error, Result};
use crate::grid::GridSpec;
use crate::rainbow::{
    find_violation, is_dominating_set, is_krdf, is_total_dominating_set, ColorSet, RainbowAssignment,
    MAX_COLORS,
};
use crate::solve::{gamma_t, minimum_sets, RainbowSolver, SolveBudget};
use crate::vertex_set::VertexSet;

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_COLORS {
        return Err(invalid(format!("k must lie in 1..={MAX_COLORS}, got {k}")));
    }
    Ok(())
}

fn check_universe(d: &Digraph, s: &VertexSet) -> Result<()> {
    if s.universe() != d.order() {
        return Err(invalid(format!(
            "vertex set is over {} vertices but the digraph has {}",
            s.universe(),
            d.order()
        )));
    }
    Ok(())
}

fn isolated_in(d: &Digraph, s: &VertexSet, v: usize) -> bool {
    !d.out_neighbors(v).iter().chain(d.in_neighbors(v)).any(|&w| s.contains(w))
}

/// Full colour set on `S`, plus `{1}` on one neighbour of every vertex that
/// is isolated in `D[S]`. Weight at most `k|S| + |S'|`.
pub fn tkrdf_from_dominating_set(d: &Digraph, s: &VertexSet, k: usize) -> Result<RainbowAssignment> {
    check_k(k)?;
    d.require_no_isolated()?;
    check_universe(d, s)?;
    if !is_dominating_set(d, s) {
        return Err(invalid("S is not a dominating set"));
    }
    let mut f = RainbowAssignment::uniform(d.order(), k, ColorSet::EMPTY)?;
    for v in s.iter() {
        f.set(v, ColorSet::full(k));
    }
    for v in s.iter().filter(|&v| isolated_in(d, s, v)) {
        let partner = d
            .out_neighbors(v)
            .first()
            .or_else(|| d.in_neighbors(v).first())
            .copied()
            .expect("no isolated vertex");
        if f.get(partner).is_empty() {
            f.set(partner, ColorSet::singleton(1));
        }
    }
    Ok(f)
}

/// Full colour set on a total dominating set `X`; weight `k|X|`.
pub fn tkrdf_from_td_set(d: &Digraph, x: &VertexSet, k: usize) -> Result<RainbowAssignment> {
    check_k(k)?;
    check_universe(d, x)?;
    if !is_total_dominating_set(d, x) {
        return Err(invalid("X is not a total dominating set"));
    }
    let mut f = RainbowAssignment::uniform(d.order(), k, ColorSet::EMPTY)?;
    for v in x.iter() {
        f.set(v, ColorSet::full(k));
    }
    Ok(f)
}

/// `{i}` on every vertex of part `X_i`; weight `|X|`.
pub fn tkrdf_from_partitioned_td_set(d: &Digraph, parts: &[VertexSet], k: usize) -> Result<RainbowAssignment> {
    check_k(k)?;
    if parts.len() != k {
        return Err(invalid(format!("expected {k} parts, got {}", parts.len())));
    }
    let mut union = VertexSet::empty(d.order());
    for (i, part) in parts.iter().enumerate() {
        check_universe(d, part)?;
        if part.is_empty() {
            return Err(invalid(format!("part {} is empty", i + 1)));
        }
        if !part.is_disjoint(&union) {
            return Err(invalid(format!("part {} overlaps an earlier part", i + 1)));
        }
        union.union_with(part);
    }
    if !is_total_dominating_set(d, &union) {
        return Err(invalid("the union of the parts is not a total dominating set"));
    }
    for (i, part) in parts.iter().enumerate() {
        let reach = d.out_neighborhood(part, false)?;
        if let Some(v) = union.complement().iter().find(|&v| !reach.contains(v)) {
            return Err(invalid(format!("part {} has no arc into vertex {v}", i + 1)));
        }
    }
    let mut f = RainbowAssignment::uniform(d.order(), k, ColorSet::EMPTY)?;
    for (i, part) in parts.iter().enumerate() {
        for v in part.iter() {
            f.set(v, ColorSet::singleton(i + 1));
        }
    }
    Ok(f)
}

/// Turns a kRDF on a weakly connected digraph into a TkRDF of weight at most
/// `min(n, weight(f) + (r − s) + 1)`.
pub fn totalize_rkdf(d: &Digraph, f: &RainbowAssignment) -> Result<RainbowAssignment> {
    let (n, k) = (d.order(), f.k());
    d.require_no_isolated()?;
    if !d.is_weakly_connected() {
        return Err(invalid("digraph is not weakly connected"));
    }
    if n < k.max(2) {
        return Err(invalid(format!("order {n} is below max(k, 2) = {}", k.max(2))));
    }
    if let Some(v) = find_violation(d, f, false)? {
        return Err(invalid(format!("not a kRDF: {v}")));
    }
    let Some(u) = (0..n).find(|&v| f.get(v).is_empty()) else {
        return Ok(f.clone());
    };
    let positive = f.positive_set();
    let induced = d.induced_subdigraph(&positive)?;
    let mut g = f.clone();
    for comp in induced.digraph.weak_components() {
        let comp: Vec<usize> = comp.into_iter().map(|i| induced.vertices[i]).collect();
        if comp.iter().any(|&x| d.has_arc(x, u)) {
            continue;
        }
        let pick = |nbrs: fn(&Digraph, usize) -> &[usize]| {
            comp.iter()
                .flat_map(|&x| nbrs(d, x).iter().copied())
                .filter(|&w| !positive.contains(w))
                .min()
        };
        let w = pick(Digraph::out_neighbors)
            .or_else(|| pick(Digraph::in_neighbors))
            .expect("a connected digraph links every component to an empty vertex");
        g.set(w, ColorSet::singleton(1));
    }
    g.set(u, ColorSet::singleton(1));
    if g.weight() > n {
        return RainbowAssignment::uniform(n, k, ColorSet::singleton(1));
    }
    Ok(g)
}

/// Adds colours `k+1..=k'` to the smallest colour class of a TkRDF.
pub fn extend_colors(d: &Digraph, f: &RainbowAssignment, k_prime: usize) -> Result<RainbowAssignment> {
    let k = f.k();
    if k_prime <= k {
        return Err(invalid(format!("k' = {k_prime} must exceed k = {k}")));
    }
    check_k(k_prime)?;
    if let Some(v) = find_violation(d, f, true)? {
        return Err(invalid(format!("not a TkRDF: {v}")));
    }
    let class_size = |i: usize| f.values().iter().filter(|c| c.contains(i)).count();
    let smallest = (1..=k).min_by_key(|&i| (class_size(i), i)).expect("k >= 1");
    let extra = ColorSet::range(k + 1, k_prime);
    let values = f
        .values()
        .iter()
        .map(|&c| if c.contains(smallest) { c.union(extra) } else { c })
        .collect();
    RainbowAssignment::new(k_prime, values)
}

/// The explicit optimal assignment on `P_m □ P_n` for
/// `(m, k) ∈ {(2, 2), (2, 3), (3, 3)}`.
pub fn grid_certificate(spec: GridSpec) -> Result<RainbowAssignment> {
    let GridSpec { rows: m, cols: n, k } = spec;
    if !matches!((m, k), (2, 2) | (2, 3) | (3, 3)) || n < m {
        return Err(invalid(format!("no explicit certificate for m={m}, n={n}, k={k}")));
    }
    let mut f = RainbowAssignment::uniform(spec.order(), k, ColorSet::EMPTY)?;
    let one = ColorSet::singleton(1);
    let two = ColorSet::singleton(2);
    match (m, k) {
        (2, 2) => {
            for j in 0..n {
                f.set(spec.vertex(0, j), one);
                if j % 2 == 0 {
                    f.set(spec.vertex(1, j), two);
                }
            }
        }
        (2, 3) => {
            for j in 0..n {
                f.set(spec.vertex(0, j), one);
                f.set(spec.vertex(1, j), two);
            }
        }
        _ => {
            for v in 0..spec.order() {
                f.set(v, ColorSet::singleton(3));
            }
            // counts of t in 0..=last for each piece
            let (ones, twos) = if n % 3 == 0 {
                (n / 3, n / 3 - 1)
            } else {
                ((n - 1).div_ceil(3), (n - 2).div_ceil(3))
            };
            for t in 0..ones {
                f.set(spec.vertex(1, 3 * t + 1), ColorSet::range(1, 2));
                f.set(spec.vertex(2, 3 * t + 1), ColorSet::EMPTY);
            }
            for t in 0..twos {
                f.set(spec.vertex(1, 3 * t + 2), ColorSet::EMPTY);
            }
        }
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KCase {
    /// `n = k`.
    OrderEqualsK,
    /// A set `X` of size `2..=k` without isolated vertices in `D[X]` whose
    /// every member has an arc to every vertex outside `X`.
    Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KCharacterization {
    pub holds: bool,
    pub case: Option<KCase>,
    pub witness: Option<VertexSet>,
    /// A TkRDF of weight `k` built from the witness (or all-`{1}` when `n = k`).
    pub certificate: Option<RainbowAssignment>,
}

/// Structural test for `γ_trk(D) = k` with `k ≥ 2`.
pub fn check_gamma_trk_equals_k(d: &Digraph, k: usize) -> Result<KCharacterization> {
    check_k(k)?;
    if k == 1 {
        return Err(invalid("the characterisation needs k >= 2"));
    }
    d.require_no_isolated()?;
    let n = d.order();
    if n == k {
        return Ok(KCharacterization {
            holds: true,
            case: Some(KCase::OrderEqualsK),
            witness: None,
            certificate: Some(RainbowAssignment::uniform(n, k, ColorSet::singleton(1))?),
        });
    }
    let none = KCharacterization {
        holds: false,
        case: None,
        witness: None,
        certificate: None,
    };
    if n < k {
        return Ok(none);
    }
    for t in 2..=k {
        let mut found = None;
        for_each_combination(n, t, |xs| {
            let set = VertexSet::from_vertices(n, xs.iter().copied()).expect("indices below n");
            let ok = xs.iter().all(|&v| !isolated_in(d, &set, v))
                && (0..n)
                    .filter(|v| !set.contains(*v))
                    .all(|w| xs.iter().all(|&v| d.has_arc(v, w)));
            if ok {
                found = Some(xs.to_vec());
            }
            !ok
        });
        if let Some(xs) = found {
            let mut g = RainbowAssignment::uniform(n, k, ColorSet::EMPTY)?;
            for (i, &v) in xs.iter().enumerate() {
                let color = if i + 1 < t {
                    ColorSet::singleton(i + 1)
                } else {
                    ColorSet::range(t, k)
                };
                g.set(v, color);
            }
            return Ok(KCharacterization {
                holds: true,
                case: Some(KCase::Witness),
                witness: Some(VertexSet::from_vertices(n, xs)?),
                certificate: Some(g),
            });
        }
    }
    Ok(none)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingReport {
    pub gamma: usize,
    pub gamma_trk: usize,
    pub equality: bool,
    pub gamma_sets: usize,
    pub all_gamma_sets_are_packings: bool,
    /// Equality holds but some minimum dominating set is not a packing.
    pub violation: bool,
}

/// Compares `γ_trk = (k+1)γ` against the packing property of all `γ`-sets.
pub fn check_equality_condition_2_1(d: &Digraph, k: usize, budget: SolveBudget) -> Result<PackingReport> {
    check_k(k)?;
    d.require_no_isolated()?;
    let sets = minimum_sets(d, false, budget)?;
    let gamma = sets.first().map_or(0, VertexSet::len);
    let value = trk_value(d, k, budget)?;
    let equality = value == (k + 1) * gamma;
    let all_packings = sets.iter().all(|s| d.is_packing(s));
    Ok(PackingReport {
        gamma,
        gamma_trk: value,
        equality,
        gamma_sets: sets.len(),
        all_gamma_sets_are_packings: all_packings,
        violation: equality && !all_packings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdEqualityReport {
    pub gamma_t: usize,
    pub gamma_trk: usize,
    /// `γ_trk = γ_t`.
    pub lower_equality: bool,
    /// A `γ_t`-set split into `k` parts, each reaching every outside vertex.
    pub partition: Option<Vec<VertexSet>>,
    /// `γ_trk = kγ_t`.
    pub upper_equality: bool,
    /// An optimum taking only the values `∅` and `{1..k}`.
    pub two_valued_optimum: Option<RainbowAssignment>,
    /// Both structural answers agree with the numeric ones.
    pub consistent: bool,
}

/// Decides both equality conditions structurally and compares them with the
/// solver values.
pub fn check_equality_condition_2_2(d: &Digraph, k: usize, budget: SolveBudget) -> Result<TdEqualityReport> {
    check_k(k)?;
    d.require_no_isolated()?;
    let n = d.order();
    if n < k {
        return Err(invalid(format!("order {n} is below k = {k}")));
    }
    let gt = gamma_t(d, budget)?.value;
    let value = trk_value(d, k, budget)?;

    let mut nodes = 0u64;
    let mut partition = None;
    for x in minimum_sets(d, true, budget)? {
        if let Some(parts) = partition_td_set(d, &x, k, &mut nodes, budget)? {
            partition = Some(parts);
            break;
        }
    }

    let mut two_valued = None;
    if value % k == 0 {
        let full = ColorSet::full(k);
        for_each_combination(n, value / k, |xs| {
            let mut f = RainbowAssignment::uniform(n, k, ColorSet::EMPTY).expect("k checked");
            for &v in xs {
                f.set(v, full);
            }
            let ok = matches!(find_violation(d, &f, true), Ok(None));
            if ok {
                two_valued = Some(f);
            }
            !ok
        });
    }

    let lower_equality = value == gt;
    let upper_equality = value == k * gt;
    Ok(TdEqualityReport {
        gamma_t: gt,
        gamma_trk: value,
        lower_equality,
        consistent: lower_equality == partition.is_some() && upper_equality == two_valued.is_some(),
        partition,
        upper_equality,
        two_valued_optimum: two_valued,
    })
}

fn trk_value(d: &Digraph, k: usize, budget: SolveBudget) -> Result<usize> {
    Ok(RainbowSolver::new(k, true).budget(budget).tie_break(false).solve(d)?.value)
}

/// Splits `x` into exactly `k` nonempty parts, each containing an
/// in-neighbour of every vertex outside `x`. Parts are explored in
/// restricted-growth order, so the first hit is canonical.
fn partition_td_set(
    d: &Digraph,
    x: &VertexSet,
    k: usize,
    nodes: &mut u64,
    budget: SolveBudget,
) -> Result<Option<Vec<VertexSet>>> {
    let members = x.to_vec();
    if members.len() < k {
        return Ok(None);
    }
    let outside: Vec<usize> = x.complement().to_vec();
    let mut label = vec![0usize; members.len()];

    #[allow(clippy::too_many_arguments)]
    fn go(
        d: &Digraph,
        members: &[usize],
        outside: &[usize],
        k: usize,
        label: &mut [usize],
        pos: usize,
        used: usize,
        nodes: &mut u64,
        budget: SolveBudget,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > budget.max_nodes {
            return Err(Error::BudgetExceeded {
                nodes: *nodes,
                incumbent: None,
            });
        }
        if members.len() - pos < k - used {
            return Ok(false);
        }
        if pos == members.len() {
            return Ok((0..k).all(|part| {
                outside.iter().all(|&w| {
                    members
                        .iter()
                        .zip(label.iter())
                        .any(|(&v, &l)| l == part && d.has_arc(v, w))
                })
            }));
        }
        for l in 0..k.min(used + 1) {
            label[pos] = l;
            if go(d, members, outside, k, label, pos + 1, used.max(l + 1), nodes, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    if !go(d, &members, &outside, k, &mut label, 0, 0, nodes, budget)? {
        return Ok(None);
    }
    let parts = (0..k)
        .map(|part| {
            let vs = members.iter().zip(&label).filter(|(_, &l)| l == part).map(|(&v, _)| v);
            VertexSet::from_vertices(d.order(), vs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(parts))
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order
/// until it returns `false`.
pub(crate) fn for_each_combination(n: usize, size: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Preconditions of [`totalize_rkdf`].
pub fn can_totalize(d: &Digraph, f: &RainbowAssignment) -> bool {
    !d.has_isolated_vertex() && d.is_weakly_connected() && d.order() >= f.k().max(2) && is_krdf(d, f)
}
