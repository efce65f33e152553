//! Colour-set assignments and the four domination verifiers.
//!
//! A [`RainbowAssignment`] maps each vertex to a subset of `{1..k}`. It is a
//! k-rainbow dominating function when every vertex labelled `∅` sees all `k`
//! colours on its in-neighbours, and a total one when, in addition, the
//! nonempty-labelled vertices induce a subdigraph without isolated vertices.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digraph::Digraph;
use crate::error::{invalid, Result};
use crate::vertex_set::VertexSet;

/// Largest supported number of colours.
pub const MAX_COLORS: usize = 16;

/// A subset of the colours `{1..16}`; colour `c` is bit `c - 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSet(u16);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn from_bits(bits: u16) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// `{1..k}`.
    pub fn full(k: usize) -> Self {
        assert!((1..=MAX_COLORS).contains(&k), "k must lie in 1..=16");
        ColorSet(((1u32 << k) - 1) as u16)
    }

    pub fn singleton(color: usize) -> Self {
        assert!((1..=MAX_COLORS).contains(&color));
        ColorSet(1 << (color - 1))
    }

    /// `{from..=to}`; empty when `from > to`.
    pub fn range(from: usize, to: usize) -> Self {
        (from..=to).map(ColorSet::singleton).fold(ColorSet::EMPTY, ColorSet::union)
    }

    pub fn from_colors<I: IntoIterator<Item = usize>>(colors: I) -> Result<Self> {
        let mut bits = 0u16;
        for c in colors {
            if !(1..=MAX_COLORS).contains(&c) {
                return Err(invalid(format!("colour {c} outside 1..={MAX_COLORS}")));
            }
            bits |= 1 << (c - 1);
        }
        Ok(ColorSet(bits))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, color: usize) -> bool {
        (1..=MAX_COLORS).contains(&color) && self.0 >> (color - 1) & 1 == 1
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest colour present, or 0 for the empty set.
    pub fn max_color(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    /// Colours in ascending order.
    pub fn colors(self) -> impl Iterator<Item = usize> {
        (1..=MAX_COLORS).filter(move |&c| self.contains(c))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.colors()).finish()
    }
}

/// A total map from vertices to colour sets over `{1..k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RainbowAssignment {
    k: usize,
    values: Vec<ColorSet>,
}

impl RainbowAssignment {
    pub fn new(k: usize, values: Vec<ColorSet>) -> Result<Self> {
        if !(1..=MAX_COLORS).contains(&k) {
            return Err(invalid(format!("k = {k} outside 1..={MAX_COLORS}")));
        }
        let full = ColorSet::full(k);
        if let Some(v) = values.iter().position(|c| !c.is_subset(full)) {
            return Err(invalid(format!(
                "vertex {v} uses colour {} > k = {k}",
                values[v].max_color()
            )));
        }
        Ok(Self { k, values })
    }

    /// Every vertex receives `value`.
    pub fn uniform(n: usize, k: usize, value: ColorSet) -> Result<Self> {
        Self::new(k, vec![value; n])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> ColorSet {
        self.values[v]
    }

    pub fn values(&self) -> &[ColorSet] {
        &self.values
    }

    /// Replaces the value at `v`. Panics if `value` uses a colour above `k`.
    pub fn set(&mut self, v: usize, value: ColorSet) {
        assert!(value.is_subset(ColorSet::full(self.k)));
        self.values[v] = value;
    }

    /// `Σ |f(v)|`.
    pub fn weight(&self) -> usize {
        self.values.iter().map(|c| c.len()).sum()
    }

    /// Vertices with a nonempty label.
    pub fn positive_set(&self) -> VertexSet {
        let n = self.values.len();
        let mut s = VertexSet::empty(n);
        for (v, c) in self.values.iter().enumerate() {
            if !c.is_empty() {
                s.insert(v);
            }
        }
        s
    }

    /// Number of vertices labelled `∅`.
    pub fn empty_count(&self) -> usize {
        self.values.iter().filter(|c| c.is_empty()).count()
    }

    /// Same labels read as an assignment over `k' ≥ max colour used`.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(k, self.values.clone())
    }

    /// Colour lists per vertex, as written in the JSON form.
    pub fn to_color_lists(&self) -> Vec<Vec<usize>> {
        self.values.iter().map(|c| c.colors().collect()).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| invalid(format!("assignment JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("assignment serialises")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssignmentWire {
    k: usize,
    values: Vec<Vec<usize>>,
}

impl Serialize for RainbowAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AssignmentWire {
            k: self.k,
            values: self.to_color_lists(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RainbowAssignment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = AssignmentWire::deserialize(deserializer)?;
        let mut values = Vec::with_capacity(wire.values.len());
        for (v, colors) in wire.values.iter().enumerate() {
            if colors.windows(2).any(|w| w[0] >= w[1]) {
                return Err(D::Error::custom(format!(
                    "colours of vertex {v} must be strictly ascending"
                )));
            }
            if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > wire.k) {
                return Err(D::Error::custom(format!(
                    "vertex {v}: colour {c} outside 1..={}",
                    wire.k
                )));
            }
            values.push(ColorSet::from_colors(colors.iter().copied()).map_err(D::Error::custom)?);
        }
        RainbowAssignment::new(wire.k, values).map_err(D::Error::custom)
    }
}

/// First reason an assignment fails to be a (total) k-rainbow dominating function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Vertex labelled `∅` whose in-neighbours only see `seen`.
    Uncovered { vertex: usize, seen: ColorSet },
    /// Nonempty-labelled vertex with no nonempty-labelled neighbour.
    IsolatedPositive { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uncovered { vertex, seen } => {
                write!(f, "vertex {vertex} is empty but its in-neighbours only carry {seen:?}")
            }
            Violation::IsolatedPositive { vertex } => {
                write!(f, "vertex {vertex} is labelled but has no labelled neighbour")
            }
        }
    }
}

pub fn is_dominating_set(d: &Digraph, s: &VertexSet) -> bool {
    d.out_neighborhood(s, true)
        .map(|closed| closed.len() == d.order())
        .unwrap_or(false)
}

fn induced_has_isolated(d: &Digraph, s: &VertexSet) -> Option<usize> {
    s.iter().find(|&v| {
        !d.out_neighbors(v)
            .iter()
            .chain(d.in_neighbors(v))
            .any(|&w| s.contains(w))
    })
}

pub fn is_total_dominating_set(d: &Digraph, s: &VertexSet) -> bool {
    is_dominating_set(d, s) && (d.order() == 0 || !s.is_empty()) && induced_has_isolated(d, s).is_none()
}

/// Locates the first violated condition, or `None` if `f` is a (total) kRDF.
///
/// Errors when the assignment does not cover exactly the vertices of `d`.
pub fn find_violation(d: &Digraph, f: &RainbowAssignment, total: bool) -> Result<Option<Violation>> {
    if f.len() != d.order() {
        return Err(invalid(format!(
            "assignment has {} values but the digraph has {} vertices",
            f.len(),
            d.order()
        )));
    }
    let full = ColorSet::full(f.k());
    for v in 0..d.order() {
        if f.get(v).is_empty() {
            let seen = d
                .in_neighbors(v)
                .iter()
                .fold(ColorSet::EMPTY, |acc, &u| acc.union(f.get(u)));
            if seen != full {
                return Ok(Some(Violation::Uncovered { vertex: v, seen }));
            }
        }
    }
    if total {
        if let Some(vertex) = induced_has_isolated(d, &f.positive_set()) {
            return Ok(Some(Violation::IsolatedPositive { vertex }));
        }
    }
    Ok(None)
}

/// Every `∅`-labelled vertex sees all colours on its in-neighbours.
/// An assignment whose length differs from the order of `d` is rejected.
pub fn is_krdf(d: &Digraph, f: &RainbowAssignment) -> bool {
    matches!(find_violation(d, f, false), Ok(None))
}

/// Total k-rainbow domination test. Only defined when `d` has no isolated vertex.
pub fn is_tkrdf(d: &Digraph, f: &RainbowAssignment) -> Result<bool> {
    d.require_no_isolated()?;
    Ok(find_violation(d, f, true)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(colors: &[usize]) -> ColorSet {
        ColorSet::from_colors(colors.iter().copied()).unwrap()
    }

    fn assign(k: usize, vals: &[&[usize]]) -> RainbowAssignment {
        RainbowAssignment::new(k, vals.iter().map(|c| cs(c)).collect()).unwrap()
    }

    fn path(n: usize) -> Digraph {
        Digraph::from_arcs(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star4() -> Digraph {
        Digraph::from_arcs(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn colour_set_basics() {
        assert_eq!(ColorSet::full(3), cs(&[1, 2, 3]));
        assert_eq!(ColorSet::range(2, 3), cs(&[2, 3]));
        assert!(ColorSet::range(3, 2).is_empty());
        assert_eq!(cs(&[1, 4]).max_color(), 4);
        assert!(ColorSet::from_colors([0]).is_err());
        assert!(ColorSet::from_colors([17]).is_err());
        assert_eq!(ColorSet::full(16).len(), 16);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(RainbowAssignment::uniform(3, 2, ColorSet::EMPTY).unwrap().weight(), 0);
        assert_eq!(RainbowAssignment::uniform(5, 1, cs(&[1])).unwrap().weight(), 5);
        assert_eq!(assign(3, &[&[1, 2], &[], &[3]]).weight(), 3);
    }

    #[test]
    fn rejects_colours_above_k() {
        assert!(RainbowAssignment::new(2, vec![cs(&[3])]).is_err());
        assert!(RainbowAssignment::new(0, vec![]).is_err());
        assert!(RainbowAssignment::new(17, vec![]).is_err());
    }

    #[test]
    fn dominating_set_examples() {
        let p3 = path(3);
        assert!(is_dominating_set(&p3, &set(3, &[0, 2])));
        assert!(!is_dominating_set(&p3, &set(3, &[2])));
        assert!(is_dominating_set(&p3, &VertexSet::full(3)));
    }

    #[test]
    fn total_dominating_set_examples() {
        let p3 = path(3);
        assert!(is_total_dominating_set(&p3, &set(3, &[0, 1])));
        assert!(!is_total_dominating_set(&p3, &set(3, &[0, 2])));
        assert!(!is_total_dominating_set(&p3, &set(3, &[])));
        assert!(is_total_dominating_set(&star4(), &set(4, &[0, 2])));
    }

    #[test]
    fn krdf_examples() {
        let p2 = path(2);
        assert!(is_krdf(&p2, &RainbowAssignment::uniform(2, 3, cs(&[1])).unwrap()));
        assert!(is_krdf(&p2, &assign(2, &[&[1, 2], &[]])));
        assert!(!is_krdf(&p2, &assign(2, &[&[1], &[]])));
        assert!(!is_krdf(&p2, &assign(2, &[&[1, 2]])));
    }

    #[test]
    fn tkrdf_examples() {
        let p2 = path(2);
        assert!(is_tkrdf(&p2, &assign(1, &[&[1], &[1]])).unwrap());
        assert!(!is_tkrdf(&p2, &assign(2, &[&[1, 2], &[]])).unwrap());
        assert!(is_tkrdf(&star4(), &assign(2, &[&[1, 2], &[1], &[], &[]])).unwrap());
        assert!(is_tkrdf(&Digraph::empty(1), &assign(1, &[&[1]])).is_err());
    }

    #[test]
    fn violations_name_the_vertex() {
        let p2 = path(2);
        assert_eq!(
            find_violation(&p2, &assign(2, &[&[1], &[]]), false).unwrap(),
            Some(Violation::Uncovered {
                vertex: 1,
                seen: cs(&[1])
            })
        );
        assert_eq!(
            find_violation(&p2, &assign(2, &[&[1, 2], &[]]), true).unwrap(),
            Some(Violation::IsolatedPositive { vertex: 0 })
        );
        assert!(find_violation(&p2, &assign(2, &[&[1]]), true).is_err());
    }

    #[test]
    fn positive_set_examples() {
        assert!(RainbowAssignment::uniform(3, 2, ColorSet::EMPTY)
            .unwrap()
            .positive_set()
            .is_empty());
        assert_eq!(RainbowAssignment::uniform(3, 2, cs(&[2])).unwrap().positive_set().len(), 3);
        assert_eq!(assign(2, &[&[], &[1], &[], &[1, 2]]).positive_set().to_vec(), vec![1, 3]);
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let f = assign(3, &[&[1, 2], &[], &[3]]);
        let text = f.to_json();
        assert_eq!(text, r#"{"k":3,"values":[[1,2],[],[3]]}"#);
        assert_eq!(RainbowAssignment::from_json(&text).unwrap(), f);
        assert!(RainbowAssignment::from_json(r#"{"k":2,"values":[[3]]}"#).is_err());
        assert!(RainbowAssignment::from_json(r#"{"k":2,"values":[[2,1]]}"#).is_err());
        assert!(RainbowAssignment::from_json(r#"{"k":2,"values":[[0]]}"#).is_err());
        assert!(RainbowAssignment::from_json(r#"{"k":2}"#).is_err());
    }
}
