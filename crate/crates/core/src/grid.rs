//! Column-profile dynamic program for total k-rainbow domination of the grid
//! `P_m □ P_n`, plus the known closed forms.
//!
//! Vertex `(i, j)` (row `i < m`, column `j < n`) has index `i * n + j`. Arcs
//! point down a column, `(i, j) -> (i + 1, j)`, and along a row,
//! `(i, j) -> (i, j + 1)`, so the in-neighbours of `(i, j)` are `(i - 1, j)`
//! and `(i, j - 1)`. Both are known once column `j` is placed, which lets the
//! sweep check coverage at each transition without carrying flags for it.
//!
//! The only thing carried forward besides the column labels is, per row, a
//! "pending" flag: the vertex is labelled but none of its neighbours seen so
//! far (left, up, down) is, so its right neighbour must be labelled.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{invalid, Error, Result};
use crate::rainbow::{ColorSet, RainbowAssignment, MAX_COLORS};
use crate::solve::{Certificate, SolveResult};

/// Cap on the number of distinct column labellings `(2^k)^m`.
pub const MAX_COLUMN_LABELLINGS: u64 = 1 << 20;

/// Cap on labellings times pending-flag patterns.
pub const MAX_SWEEP_STATES: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GridSpec {
    /// Order of the first factor `P_m`.
    pub rows: usize,
    /// Order of the second factor `P_n`.
    pub cols: usize,
    pub k: usize,
}

impl GridSpec {
    pub fn new(rows: usize, cols: usize, k: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(invalid("grid factors need at least one vertex"));
        }
        if !(1..=MAX_COLORS).contains(&k) {
            return Err(invalid(format!("k = {k} outside 1..={MAX_COLORS}")));
        }
        Ok(Self { rows, cols, k })
    }

    pub fn order(&self) -> usize {
        self.rows * self.cols
    }

    pub fn vertex(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    /// `P_rows □ P_cols`.
    pub fn digraph(&self) -> Result<Digraph> {
        directed_path(self.rows).cartesian_product(&directed_path(self.cols))
    }

    fn labellings(&self) -> Result<u64> {
        let bits = self.k as u64 * self.rows as u64;
        if bits >= 64 || 1u64 << bits > MAX_COLUMN_LABELLINGS {
            return Err(Error::StateSpaceTooLarge {
                states: if bits >= 64 { u64::MAX } else { 1 << bits },
                cap: MAX_COLUMN_LABELLINGS,
            });
        }
        // pending flags multiply the state count by 2^m
        let states = (1u64 << bits) << self.rows.min(40);
        if states > MAX_SWEEP_STATES {
            return Err(Error::StateSpaceTooLarge {
                states,
                cap: MAX_SWEEP_STATES,
            });
        }
        Ok(1 << bits)
    }
}

pub(crate) fn directed_path(n: usize) -> Digraph {
    Digraph::from_arcs(n, (1..n).map(|i| (i - 1, i))).expect("path arcs are valid")
}

/// Proven value of `γ_trk(P_m □ P_n)` where one is known:
/// `⌈3n/2⌉` for `(m, k) = (2, 2)`, `2n` for `(2, 3)`, `⌈8n/3⌉` plus one when
/// `3 | n` for `(3, 3)`, and `mn` when the grid is a directed path and `k ≥ 2`.
pub fn closed_form(spec: GridSpec) -> Option<usize> {
    let GridSpec { rows: m, cols: n, k } = spec;
    match (m, k) {
        (2, 2) if n >= 2 => Some((3 * n).div_ceil(2)),
        (2, 3) if n >= 2 => Some(2 * n),
        (3, 3) if n >= 3 => Some((8 * n).div_ceil(3) + usize::from(n % 3 == 0)),
        _ if k >= 2 && (m == 1 || n == 1) && m * n >= 2 => Some(m * n),
        _ => None,
    }
}

/// Column sums `a_j = Σ_i |f((i, j))|`.
pub fn column_weight_profile(f: &RainbowAssignment, spec: GridSpec) -> Result<Vec<usize>> {
    if f.len() != spec.order() {
        return Err(invalid(format!(
            "assignment has {} values, grid {}x{} has {} vertices",
            f.len(),
            spec.rows,
            spec.cols,
            spec.order()
        )));
    }
    Ok((0..spec.cols)
        .map(|j| (0..spec.rows).map(|i| f.get(spec.vertex(i, j)).len()).sum())
        .collect())
}

/// `γ_trk(P_m □ P_n)` with the witness whose sequence of packed column states
/// is lexicographically smallest among all optima.
pub fn dp_gamma_trk(spec: GridSpec) -> Result<SolveResult> {
    ColumnSweep::new(spec, Objective::Weight)?.solve()
}

/// Same optimum value, but the witness minimises the number of `∅` labels
/// among optimal assignments; that count is reported as the tie-break.
pub fn dp_gamma_trk_min_empty(spec: GridSpec) -> Result<SolveResult> {
    ColumnSweep::new(spec, Objective::WeightThenEmpties)?.solve()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Objective {
    Weight,
    WeightThenEmpties,
}

const INF: u64 = u64::MAX;

struct ColumnSweep {
    spec: GridSpec,
    objective: Objective,
    /// Per column labelling: rows that are labelled.
    nonempty: Vec<u32>,
    /// Per column labelling: labelled rows with no labelled vertical neighbour.
    lonely: Vec<u32>,
    /// Per column labelling: colours each `∅` row still needs from its left
    /// neighbour, packed like the labelling itself.
    need_left: Vec<u64>,
    cost: Vec<u64>,
}

impl ColumnSweep {
    fn new(spec: GridSpec, objective: Objective) -> Result<Self> {
        if spec.order() < 2 {
            return Err(invalid("a single vertex is isolated; the grid needs at least two"));
        }
        let count = spec.labellings()? as usize;
        let (m, k) = (spec.rows, spec.k);
        let full = ColorSet::full(k).bits() as u64;
        let row_mask = (1u32 << m) - 1;
        let scale = spec.order() as u64 + 1;
        let mut nonempty = vec![0u32; count];
        let mut lonely = vec![0u32; count];
        let mut need_left = vec![0u64; count];
        let mut cost = vec![0u64; count];
        for a in 0..count as u64 {
            let label = |i: usize| a >> (k * i) & full;
            let mut nz = 0u32;
            let mut weight = 0u64;
            let mut need = 0u64;
            for i in 0..m {
                let l = label(i);
                if l != 0 {
                    nz |= 1 << i;
                    weight += l.count_ones() as u64;
                } else {
                    let from_above = if i > 0 { label(i - 1) } else { 0 };
                    need |= (full & !from_above) << (k * i);
                }
            }
            let vertical = ((nz << 1) | (nz >> 1)) & row_mask;
            let idx = a as usize;
            nonempty[idx] = nz;
            lonely[idx] = nz & !vertical;
            need_left[idx] = need;
            let empties = (m - nz.count_ones() as usize) as u64;
            cost[idx] = match objective {
                Objective::Weight => weight,
                Objective::WeightThenEmpties => weight * scale + empties,
            };
        }
        Ok(Self {
            spec,
            objective,
            nonempty,
            lonely,
            need_left,
            cost,
        })
    }

    fn state(&self, label: usize, pending: u32) -> usize {
        label << self.spec.rows | pending as usize
    }

    /// Pending flags after placing `cur` to the right of `prev`, or `None` if
    /// the pair breaks coverage or leaves a pending vertex of `prev` isolated.
    fn step(&self, prev: usize, prev_pending: u32, cur: usize) -> Option<u32> {
        if self.need_left[cur] & !(prev as u64) != 0 {
            return None;
        }
        if prev_pending & !self.nonempty[cur] != 0 {
            return None;
        }
        Some(self.lonely[cur] & !self.nonempty[prev])
    }

    fn solve(&self) -> Result<SolveResult> {
        let m = self.spec.rows;
        let cols = self.spec.cols;
        let labellings = self.nonempty.len();
        let states = labellings << m;
        let mut transitions = 0u64;

        // to_go[j][s]: cheapest cost of columns j+1.. given state s at column j
        let mut to_go: Vec<Vec<u64>> = Vec::with_capacity(cols);
        let mut last = vec![INF; states];
        for a in 0..labellings {
            last[self.state(a, 0)] = 0;
        }
        to_go.push(last);
        for _ in (0..cols - 1).rev() {
            let next = to_go.last().expect("at least one column");
            let mut layer = vec![INF; states];
            for a in 0..labellings {
                let lonely = self.lonely[a];
                // pending flags are always a subset of the lonely rows
                let mut p = lonely;
                loop {
                    let mut best = INF;
                    for cur in 0..labellings {
                        transitions += 1;
                        if let Some(q) = self.step(a, p, cur) {
                            let rest = next[self.state(cur, q)];
                            if rest != INF {
                                best = best.min(self.cost[cur] + rest);
                            }
                        }
                    }
                    layer[self.state(a, p)] = best;
                    if p == 0 {
                        break;
                    }
                    p = (p - 1) & lonely;
                }
            }
            to_go.push(layer);
        }
        to_go.reverse();

        // sweep forward from an all-empty virtual column, taking the smallest
        // labelling that stays optimal at every step
        let mut labels = Vec::with_capacity(cols);
        let (mut prev, mut pending) = (0usize, 0u32);
        let mut total = INF;
        for (j, layer) in to_go.iter().enumerate() {
            let mut choice = None;
            for cur in 0..labellings {
                if let Some(q) = self.step(prev, pending, cur) {
                    let rest = layer[self.state(cur, q)];
                    if rest == INF {
                        continue;
                    }
                    let c = self.cost[cur] + rest;
                    if choice.is_none_or(|(best, _, _)| c < best) {
                        choice = Some((c, cur, q));
                    }
                }
            }
            let (c, cur, q) = choice.expect("every grid with two or more vertices has a total kRDF");
            if j == 0 {
                total = c;
            }
            labels.push(cur);
            prev = cur;
            pending = q;
        }

        let assignment = self.assignment_from_columns(&labels);
        let weight = assignment.weight();
        let tie_break_empty_count = match self.objective {
            Objective::Weight => None,
            Objective::WeightThenEmpties => {
                let scale = self.spec.order() as u64 + 1;
                debug_assert_eq!(total / scale, weight as u64);
                Some((total % scale) as usize)
            }
        };
        debug_assert!(self.objective == Objective::WeightThenEmpties || total == weight as u64);
        Ok(SolveResult {
            value: weight,
            certificate: Certificate::Assignment(assignment),
            nodes_explored: transitions,
            tie_break_empty_count,
        })
    }

    fn assignment_from_columns(&self, labels: &[usize]) -> RainbowAssignment {
        let GridSpec { rows, cols, k } = self.spec;
        let full = ColorSet::full(k).bits() as usize;
        let mut values = vec![ColorSet::EMPTY; rows * cols];
        for (j, &a) in labels.iter().enumerate() {
            for i in 0..rows {
                values[i * cols + j] = ColorSet::from_bits((a >> (k * i) & full) as u16);
            }
        }
        RainbowAssignment::new(k, values).expect("labels stay within k")
    }
}
