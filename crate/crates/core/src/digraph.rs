//! Loop-free digraphs without multiple arcs, stored as sorted in/out lists.
//!
//! Vertices are the dense integers `0..n`. Opposite arcs `(u, v)` and `(v, u)`
//! may both be present. Every constructor re-establishes the invariant that
//! `v` is listed in `out_neighbors(u)` exactly when `u` is listed in
//! `in_neighbors(v)`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

/// Extremal in/out degrees of a digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeSummary {
    pub max_out: usize,
    pub max_in: usize,
    pub min_out: usize,
    pub min_in: usize,
}

/// An induced subdigraph together with the original index of each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubdigraph {
    pub digraph: Digraph,
    /// `vertices[i]` is the vertex of the parent digraph relabelled to `i`.
    pub vertices: Vec<usize>,
}

impl Digraph {
    /// The arcless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
        }
    }

    /// Builds a digraph from an arc list, rejecting loops, repeated arcs and
    /// endpoints outside `0..n`.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(invalid(format!("arc ({u},{v}) out of range for order {n}")));
            }
            if u == v {
                return Err(invalid(format!("loop at vertex {u}")));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for (u, list) in out_adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(invalid(format!("duplicate arc ({u},{})", w[0])));
            }
        }
        for list in in_adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Self { out_adj, in_adj })
    }

    /// Like [`Digraph::from_arcs`] but silently drops repeated arcs.
    pub(crate) fn from_arcs_dedup<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut arcs: Vec<_> = arcs.into_iter().collect();
        arcs.sort_unstable();
        arcs.dedup();
        Self::from_arcs(n, arcs)
    }

    pub fn order(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Vertices joined to `v` by an arc in either direction, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut all: Vec<usize> = self.out_adj[v].iter().chain(&self.in_adj[v]).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    fn check_members(&self, s: &VertexSet) -> Result<()> {
        if s.universe() > self.order() {
            if let Some(v) = s.iter().find(|&v| v >= self.order()) {
                return Err(invalid(format!(
                    "vertex {v} out of range for order {}",
                    self.order()
                )));
            }
        }
        Ok(())
    }

    /// Union of the out-neighbourhoods of `s`, plus `s` itself when `closed`.
    pub fn out_neighborhood(&self, s: &VertexSet, closed: bool) -> Result<VertexSet> {
        self.check_members(s)?;
        let mut result = VertexSet::empty(self.order());
        for v in s.iter() {
            if closed {
                result.insert(v);
            }
            for &w in &self.out_adj[v] {
                result.insert(w);
            }
        }
        Ok(result)
    }

    pub fn degrees(&self) -> Result<DegreeSummary> {
        if self.order() == 0 {
            return Err(invalid("degrees of the empty digraph are undefined"));
        }
        let outs = self.out_adj.iter().map(Vec::len);
        let ins = self.in_adj.iter().map(Vec::len);
        Ok(DegreeSummary {
            max_out: outs.clone().max().unwrap_or(0),
            min_out: outs.min().unwrap_or(0),
            max_in: ins.clone().max().unwrap_or(0),
            min_in: ins.min().unwrap_or(0),
        })
    }

    /// First vertex with neither in- nor out-arcs.
    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.order()).find(|&v| self.out_adj[v].is_empty() && self.in_adj[v].is_empty())
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.isolated_vertex().is_some()
    }

    pub(crate) fn require_no_isolated(&self) -> Result<()> {
        match self.isolated_vertex() {
            Some(v) => Err(Error::IsolatedVertex(v)),
            None => Ok(()),
        }
    }

    pub fn induced_subdigraph(&self, s: &VertexSet) -> Result<InducedSubdigraph> {
        self.check_members(s)?;
        let vertices = s.to_vec();
        let mut relabel = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            relabel[v] = i;
        }
        let arcs = vertices.iter().flat_map(|&u| {
            let relabel = &relabel;
            self.out_adj[u]
                .iter()
                .filter(move |&&v| relabel[v] != usize::MAX)
                .map(move |&v| (relabel[u], relabel[v]))
        });
        let digraph = Digraph::from_arcs(vertices.len(), arcs)?;
        Ok(InducedSubdigraph { digraph, vertices })
    }

    /// Components of the underlying undirected graph, each sorted, ordered by
    /// smallest member.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut component = Vec::new();
            while let Some(v) = queue.pop_front() {
                component.push(v);
                for &w in self.out_adj[v].iter().chain(&self.in_adj[v]) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.weak_components().len() <= 1
    }

    /// True when the closed out-neighbourhoods of distinct members of `s` are
    /// pairwise disjoint.
    pub fn is_packing(&self, s: &VertexSet) -> bool {
        let mut covered = VertexSet::empty(self.order());
        for v in s.iter() {
            if v >= self.order() {
                return false;
            }
            for w in std::iter::once(v).chain(self.out_adj[v].iter().copied()) {
                if covered.contains(w) {
                    return false;
                }
                covered.insert(w);
            }
        }
        true
    }

    /// Cartesian product; vertex `(x, y)` gets index `x * other.order() + y`.
    pub fn cartesian_product(&self, other: &Digraph) -> Result<Digraph> {
        let (n1, n2) = (self.order(), other.order());
        if n1 == 0 || n2 == 0 {
            return Err(invalid("cartesian product factors must be nonempty"));
        }
        n1.checked_mul(n2)
            .ok_or_else(|| invalid(format!("product order {n1}x{n2} overflows")))?;
        let idx = |x: usize, y: usize| x * n2 + y;
        let mut arcs = Vec::with_capacity(self.arc_count() * n2 + n1 * other.arc_count());
        for (x1, x2) in self.arcs() {
            for y in 0..n2 {
                arcs.push((idx(x1, y), idx(x2, y)));
            }
        }
        for x in 0..n1 {
            for (y1, y2) in other.arcs() {
                arcs.push((idx(x, y1), idx(x, y2)));
            }
        }
        Digraph::from_arcs(n1 * n2, arcs)
    }

    /// Verifies the in/out list invariants; constructors guarantee it.
    pub fn is_consistent(&self) -> bool {
        let n = self.order();
        if self.in_adj.len() != n {
            return false;
        }
        for u in 0..n {
            let outs = &self.out_adj[u];
            if outs.windows(2).any(|w| w[0] >= w[1]) || outs.contains(&u) {
                return false;
            }
            if outs.iter().any(|&v| v >= n || self.in_adj[v].binary_search(&u).is_err()) {
                return false;
            }
        }
        let in_total: usize = self.in_adj.iter().map(Vec::len).sum();
        in_total == self.arc_count()
    }

    /// Parses the edge-list format: a header `n m` followed by `m` lines `u v`.
    pub fn parse_edge_list(text: &str) -> Result<Digraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header `n m`".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        let mut arcs = Vec::with_capacity(m);
        let mut seen = std::collections::HashSet::new();
        for (line, body) in lines.by_ref().take(m) {
            let [u, v] = parse_pair(line, body)?;
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex out of range 0..{n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    message: format!("loop at vertex {u}"),
                });
            }
            if !seen.insert((u, v)) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate arc ({u},{v})"),
                });
            }
            arcs.push((u, v));
        }
        if arcs.len() != m {
            return Err(Error::Parse {
                line: hline,
                message: format!("header announces {m} arcs, found {}", arcs.len()),
            });
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                message: "trailing content after the last arc".into(),
            });
        }
        Digraph::from_arcs(n, arcs)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.arc_count());
        for (u, v) in self.arcs() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n");
        for v in 0..self.order() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.arcs() {
            let _ = writeln!(out, "  {u} -> {v};");
        }
        out.push_str("}\n");
        out
    }
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2]> {
    let mut it = body.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            message: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("not a non-negative integer: {tok:?}"),
        })
    };
    let pair = [next()?, next()?];
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            message: "expected exactly two integers".into(),
        });
    }
    Ok(pair)
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs=[", self.order())?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        f.write_str("])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Digraph {
        Digraph::from_arcs(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Digraph::from_arcs(2, [(0, 0)]).is_err());
        assert!(Digraph::from_arcs(2, [(0, 1), (0, 1)]).is_err());
        assert!(Digraph::from_arcs(2, [(0, 2)]).is_err());
        let two_cycle = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(two_cycle.arc_count(), 2);
    }

    #[test]
    fn out_neighborhood_examples() {
        let p3 = path(3);
        assert_eq!(p3.out_neighborhood(&set(3, &[0]), true).unwrap().to_vec(), vec![0, 1]);
        assert!(p3.out_neighborhood(&set(3, &[]), false).unwrap().is_empty());
        assert_eq!(p3.out_neighborhood(&set(3, &[0, 2]), false).unwrap().to_vec(), vec![1]);
        assert!(p3.out_neighborhood(&set(5, &[4]), false).is_err());
    }

    #[test]
    fn degree_examples() {
        let c4 = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let d = c4.degrees().unwrap();
        assert_eq!((d.max_out, d.max_in, d.min_out, d.min_in), (1, 1, 1, 1));
        let star = Digraph::from_arcs(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let d = star.degrees().unwrap();
        assert_eq!((d.max_out, d.max_in, d.min_out, d.min_in), (3, 1, 0, 0));
        let d = path(3).degrees().unwrap();
        assert_eq!((d.max_out, d.max_in, d.min_out, d.min_in), (1, 1, 0, 0));
        assert!(Digraph::empty(0).degrees().is_err());
    }

    #[test]
    fn isolated_vertices() {
        assert!(!path(2).has_isolated_vertex());
        assert!(Digraph::empty(1).has_isolated_vertex());
        let g = Digraph::from_arcs(3, [(0, 1)]).unwrap();
        assert_eq!(g.isolated_vertex(), Some(2));
    }

    #[test]
    fn induced_subdigraph_examples() {
        let p3 = path(3);
        let sub = p3.induced_subdigraph(&set(3, &[0, 1])).unwrap();
        assert_eq!(sub.digraph, path(2));
        let sub = p3.induced_subdigraph(&set(3, &[0, 2])).unwrap();
        assert_eq!(sub.digraph.order(), 2);
        assert_eq!(sub.digraph.arc_count(), 0);
        assert_eq!(sub.vertices, vec![0, 2]);
        let sub = p3.induced_subdigraph(&VertexSet::full(3)).unwrap();
        assert_eq!(sub.digraph, p3);
    }

    #[test]
    fn weak_connectivity() {
        assert!(path(5).is_weakly_connected());
        let two = Digraph::from_arcs(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two.is_weakly_connected());
        assert_eq!(two.weak_components(), vec![vec![0, 1], vec![2, 3]]);
        let c3 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(c3.is_weakly_connected());
        // against arc direction still connects
        let inward = Digraph::from_arcs(3, [(1, 0), (2, 0)]).unwrap();
        assert!(inward.is_weakly_connected());
    }

    #[test]
    fn packing_examples() {
        let p3 = path(3);
        assert!(p3.is_packing(&set(3, &[1])));
        assert!(p3.is_packing(&set(3, &[])));
        assert!(!p3.is_packing(&set(3, &[0, 1])));
        assert!(path(4).is_packing(&set(4, &[0, 2])));
    }

    #[test]
    fn product_examples() {
        let sq = path(2).cartesian_product(&path(2)).unwrap();
        assert_eq!((sq.order(), sq.arc_count()), (4, 4));
        let p23 = path(2).cartesian_product(&path(3)).unwrap();
        assert_eq!((p23.order(), p23.arc_count()), (6, 7));
        assert!(p23.has_arc(0, 1) && p23.has_arc(0, 3) && p23.has_arc(4, 5));
        assert!(p23.is_consistent());
        let c3 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(Digraph::empty(1).cartesian_product(&c3).unwrap(), c3);
        assert!(Digraph::empty(0).cartesian_product(&c3).is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let g = Digraph::parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, path(3));
        assert_eq!(Digraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(matches!(
            Digraph::parse_edge_list("2 1\n0 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Digraph::parse_edge_list("2 2\n0 1\n0 1\n").is_err());
        assert!(Digraph::parse_edge_list("2 2\n0 1\n").is_err());
        assert!(Digraph::parse_edge_list("2 1\n0 1\n1 0\n").is_err());
        assert!(Digraph::parse_edge_list("").is_err());
        assert!(Digraph::parse_edge_list("2 x\n").is_err());
    }
}
