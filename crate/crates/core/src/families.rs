//! Generators for the digraph families behind the bounds and their sharpness
//! examples, exhaustive enumeration of small digraphs, and seeded random
//! digraphs.
//!
//! Families that only require "some arcs" joining designated vertices (until
//! the digraph is connected, or until those vertices induce no isolated
//! vertex) are emitted with a directed path through the designated vertices in
//! index order. A `seed` adds further arcs among the same vertices, giving
//! other admissible members of the family.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{invalid, Result};
use crate::grid::GridSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `0 -> 1 -> ... -> n-1`.
    DirectedPath { n: usize },
    /// `0 -> 1 -> ... -> n-1 -> 0`.
    DirectedCycle { n: usize },
    /// Centre 0 with arcs to `1..n`.
    DirectedStar { n: usize },
    /// A star of order `star_order` (centre 0) plus vertices `x = star_order`
    /// and `y = star_order + 1` with arcs `x -> y -> 0`. Every minimum
    /// dominating set is a packing, yet `γ_trk < (k+1)γ`.
    StarWithTail { star_order: usize, k: usize },
    /// Stars whose first leaves are joined into a connected digraph; attains
    /// `γ_trk = (k+1)γ`. Star orders must be at least `k + 2`.
    LeafLinkedStars { k: usize, sizes: Vec<usize>, seed: Option<u64> },
    /// Stars whose centres are joined into a connected digraph; attains
    /// `γ_trk = γ_rk`. Star orders must be at least `k + 1`.
    CenterLinkedStars { k: usize, sizes: Vec<usize>, seed: Option<u64> },
    /// Stars whose centres induce a subdigraph without isolated vertices;
    /// attains the colour-extension bound from `k` to `k_prime`. Star orders
    /// must be at least `k_prime + 1`.
    ExtensionSharpStars {
        k: usize,
        k_prime: usize,
        sizes: Vec<usize>,
        seed: Option<u64>,
    },
    /// Sources `x_1..x_k` (vertices `0..k`) with arcs to every sink `y_1..y_m`
    /// (vertices `k..k+m`); attains `γ_trk = 2γ_rk − k + 1`.
    Bipartite { k: usize, m: usize },
    /// Vertices `v_1..v_k` (`0..k`) and `u_1..u_k` (`k..2k`) with all arcs
    /// `v_i -> u_j` and the path `v_1 -> ... -> v_k`; attains the
    /// out-degree lower bound with `γ_trk = k`.
    DegreeBoundSharp { k: usize },
    /// `P_rows □ P_cols`.
    Grid { rows: usize, cols: usize },
}

impl Family {
    pub fn generate(&self) -> Result<Digraph> {
        let d = match self {
            Family::DirectedPath { n } => {
                require(*n >= 1, "path order must be at least 1")?;
                Digraph::from_arcs(*n, (1..*n).map(|i| (i - 1, i)))?
            }
            Family::DirectedCycle { n } => {
                require(*n >= 2, "cycle order must be at least 2")?;
                Digraph::from_arcs(*n, (0..*n).map(|i| (i, (i + 1) % n)))?
            }
            Family::DirectedStar { n } => {
                require(*n >= 2, "star order must be at least 2")?;
                Digraph::from_arcs(*n, (1..*n).map(|i| (0, i)))?
            }
            Family::StarWithTail { star_order, k } => {
                require(*k >= 1, "k must be positive")?;
                require(
                    *star_order > *k && *star_order >= 2,
                    "star order must be at least k + 1",
                )?;
                let (x, y) = (*star_order, star_order + 1);
                let arcs = (1..*star_order).map(|i| (0, i)).chain([(x, y), (y, 0)]);
                Digraph::from_arcs(star_order + 2, arcs)?
            }
            Family::LeafLinkedStars { k, sizes, seed } => {
                require(*k >= 1, "k must be positive")?;
                check_stars(sizes, k + 2, "k + 2")?;
                let starts = star_starts(sizes);
                let leaves: Vec<usize> = starts.iter().map(|s| s + 1).collect();
                let d = linked_stars(sizes, &leaves, *seed)?;
                require(d.is_weakly_connected(), "linked stars must be connected")?;
                d
            }
            Family::CenterLinkedStars { k, sizes, seed } => {
                require(*k >= 1, "k must be positive")?;
                check_stars(sizes, k + 1, "k + 1")?;
                let d = linked_stars(sizes, &star_starts(sizes), *seed)?;
                require(d.is_weakly_connected(), "linked stars must be connected")?;
                d
            }
            Family::ExtensionSharpStars {
                k,
                k_prime,
                sizes,
                seed,
            } => {
                require(*k >= 1, "k must be positive")?;
                require(k_prime > k, "k' must exceed k")?;
                check_stars(sizes, k_prime + 1, "k' + 1")?;
                let centres = star_starts(sizes);
                let d = linked_stars(sizes, &centres, *seed)?;
                let set = crate::vertex_set::VertexSet::from_vertices(d.order(), centres)?;
                let induced = d.induced_subdigraph(&set)?;
                require(
                    !induced.digraph.has_isolated_vertex(),
                    "centres must induce no isolated vertex",
                )?;
                d
            }
            Family::Bipartite { k, m } => {
                require(*k >= 1 && *m >= 1, "need k >= 1 sources and m >= 1 sinks")?;
                let arcs = (0..*k).flat_map(|i| (0..*m).map(move |j| (i, k + j)));
                Digraph::from_arcs(k + m, arcs)?
            }
            Family::DegreeBoundSharp { k } => {
                require(*k >= 2, "k must be at least 2")?;
                let all = (0..*k).flat_map(|i| (0..*k).map(move |j| (i, k + j)));
                let path = (1..*k).map(|i| (i - 1, i));
                Digraph::from_arcs(2 * k, all.chain(path))?
            }
            Family::Grid { rows, cols } => GridSpec::new(*rows, *cols, 1)?.digraph()?,
        };
        debug_assert!(d.is_consistent());
        Ok(d)
    }

    /// Key vertices of the construction: star centres (or selected leaves
    /// for [`Family::LeafLinkedStars`]), the sources of [`Family::Bipartite`],
    /// the path `v_1..v_k` of [`Family::DegreeBoundSharp`], and `{x, 0}` for
    /// [`Family::StarWithTail`]. Empty for the remaining families.
    pub fn designated(&self) -> Vec<usize> {
        match self {
            Family::StarWithTail { star_order, .. } => vec![0, *star_order],
            Family::LeafLinkedStars { sizes, .. } => star_starts(sizes).iter().map(|s| s + 1).collect(),
            Family::CenterLinkedStars { sizes, .. } | Family::ExtensionSharpStars { sizes, .. } => {
                star_starts(sizes)
            }
            Family::Bipartite { k, .. } | Family::DegreeBoundSharp { k } => (0..*k).collect(),
            Family::DirectedStar { .. } => vec![0],
            _ => Vec::new(),
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(invalid(msg))
    }
}

fn check_stars(sizes: &[usize], min: usize, min_name: &str) -> Result<()> {
    require(sizes.len() >= 2, "need at least two stars")?;
    if let Some(s) = sizes.iter().find(|&&s| s < min) {
        return Err(invalid(format!("star order {s} is below {min_name} = {min}")));
    }
    Ok(())
}

fn star_starts(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &s| {
            let start = *acc;
            *acc += s;
            Some(start)
        })
        .collect()
}

/// Disjoint stars plus a directed path through `linked` (and, with a seed,
/// random extra arcs among `linked`).
fn linked_stars(sizes: &[usize], linked: &[usize], seed: Option<u64>) -> Result<Digraph> {
    let n: usize = sizes.iter().sum();
    let mut arcs = Vec::new();
    for (&start, &size) in star_starts(sizes).iter().zip(sizes) {
        arcs.extend((1..size).map(|i| (start, start + i)));
    }
    arcs.extend(linked.windows(2).map(|w| (w[0], w[1])));
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for &a in linked {
            for &b in linked {
                if a != b && rng.gen_bool(0.5) {
                    arcs.push((a, b));
                }
            }
        }
    }
    Digraph::from_arcs_dedup(n, arcs)
}

/// Every loop-free labelled digraph on `n ≤ 4` vertices, in increasing order
/// of the arc bit pattern (bit `b` is the `b`-th ordered pair `(u, v)`,
/// `u != v`, in lexicographic order).
pub fn enumerate_small(n: usize, require_no_isolated: bool) -> Result<impl Iterator<Item = Digraph>> {
    require((1..=4).contains(&n), "exhaustive enumeration supports 1 <= n <= 4")?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let patterns = 1u32 << pairs.len();
    Ok((0..patterns).filter_map(move |bits| {
        let arcs = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| bits >> b & 1 == 1)
            .map(|(_, &p)| p);
        let d = Digraph::from_arcs(n, arcs).expect("enumerated arcs are valid");
        (!require_no_isolated || !d.has_isolated_vertex()).then_some(d)
    }))
}

/// Each ordered pair `(u, v)`, `u != v`, becomes an arc independently with
/// probability `p`, drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    require(n >= 1, "random digraphs need at least one vertex")?;
    require((0.0..=1.0).contains(&p), "arc probability must lie in [0, 1]")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}

// ---------------------------------------------------------------------------
// Textual form: `name:params`, e.g. `star:4`, `grid:2x5`,
// `remark2:t=2,k=2,sizes=4,4`.

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &[usize]| s.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let seed = |s: &Option<u64>| s.map(|s| format!(",seed={s}")).unwrap_or_default();
        match self {
            Family::DirectedPath { n } => write!(f, "path:{n}"),
            Family::DirectedCycle { n } => write!(f, "cycle:{n}"),
            Family::DirectedStar { n } => write!(f, "star:{n}"),
            Family::StarWithTail { star_order, k } => write!(f, "remark1:t={star_order},k={k}"),
            Family::LeafLinkedStars { k, sizes, seed: s } => {
                write!(f, "remark2:t={},k={k},sizes={}{}", sizes.len(), list(sizes), seed(s))
            }
            Family::CenterLinkedStars { k, sizes, seed: s } => {
                write!(f, "thm23:t={},k={k},sizes={}{}", sizes.len(), list(sizes), seed(s))
            }
            Family::ExtensionSharpStars {
                k,
                k_prime,
                sizes,
                seed: s,
            } => write!(
                f,
                "thm34:t={},k={k},kp={k_prime},sizes={}{}",
                sizes.len(),
                list(sizes),
                seed(s)
            ),
            Family::Bipartite { k, m } => write!(f, "bipartite:k={k},m={m}"),
            Family::DegreeBoundSharp { k } => write!(f, "thm33:k={k}"),
            Family::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
        }
    }
}

#[derive(Default)]
struct Params {
    positional: Vec<String>,
    named: Vec<(String, Vec<String>)>,
}

impl Params {
    fn parse(body: &str) -> Self {
        let mut p = Params::default();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.split_once('=') {
                Some((key, value)) => p.named.push((key.trim().to_string(), vec![value.trim().to_string()])),
                None => match p.named.last_mut() {
                    Some((_, values)) => values.push(tok.to_string()),
                    None => p.positional.push(tok.to_string()),
                },
            }
        }
        p
    }

    fn values(&self, key: &str) -> Option<&[String]> {
        self.named
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_slice())
    }

    fn int(&self, key: &str) -> Result<Option<usize>> {
        match self.values(key) {
            None => Ok(None),
            Some([v]) => parse_int(v).map(Some),
            Some(_) => Err(invalid(format!("parameter {key} takes one value"))),
        }
    }

    fn required(&self, key: &str, positional: usize) -> Result<usize> {
        if let Some(v) = self.int(key)? {
            return Ok(v);
        }
        self.positional
            .get(positional)
            .map(|v| parse_int(v))
            .transpose()?
            .ok_or_else(|| invalid(format!("missing parameter {key}")))
    }

    fn seed(&self) -> Result<Option<u64>> {
        self.int("seed").map(|s| s.map(|s| s as u64))
    }

    /// Star orders from `sizes=`, or `t` copies of `default`.
    fn sizes(&self, default: usize) -> Result<Vec<usize>> {
        let t = self.int("t")?;
        match self.values("sizes") {
            Some(vs) => {
                let sizes = vs.iter().map(|v| parse_int(v)).collect::<Result<Vec<_>>>()?;
                if let Some(t) = t {
                    require(t == sizes.len(), "t must equal the number of sizes")?;
                }
                Ok(sizes)
            }
            None => Ok(vec![default; t.unwrap_or(2)]),
        }
    }
}

fn parse_int(s: &str) -> Result<usize> {
    s.parse().map_err(|_| invalid(format!("not a non-negative integer: {s:?}")))
}

impl FromStr for Family {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, body) = s.split_once(':').unwrap_or((s, ""));
        let p = Params::parse(body);
        let family = match name.trim() {
            "path" | "directed_path" => Family::DirectedPath {
                n: p.required("n", 0)?,
            },
            "cycle" | "directed_cycle" => Family::DirectedCycle {
                n: p.required("n", 0)?,
            },
            "star" | "directed_star" => Family::DirectedStar {
                n: p.required("n", 0)?,
            },
            "remark1" => Family::StarWithTail {
                star_order: p.required("t", 0)?,
                k: p.required("k", 1)?,
            },
            "remark2" | "remark2_stars" => {
                let k = p.required("k", 0)?;
                Family::LeafLinkedStars {
                    k,
                    sizes: p.sizes(k + 2)?,
                    seed: p.seed()?,
                }
            }
            "thm23" | "thm23_lower_stars" => {
                let k = p.required("k", 0)?;
                Family::CenterLinkedStars {
                    k,
                    sizes: p.sizes(k + 1)?,
                    seed: p.seed()?,
                }
            }
            "thm34" | "thm34_sharp_stars" => {
                let k = p.required("k", 0)?;
                let k_prime = p.required("kp", 1)?;
                Family::ExtensionSharpStars {
                    k,
                    k_prime,
                    sizes: p.sizes(k_prime + 1)?,
                    seed: p.seed()?,
                }
            }
            "bipartite" | "bipartite_kxm" => Family::Bipartite {
                k: p.required("k", 0)?,
                m: p.required("m", 1)?,
            },
            "thm33" | "thm33_sharp" => Family::DegreeBoundSharp {
                k: p.required("k", 0)?,
            },
            "grid" => {
                let dims = p
                    .positional
                    .first()
                    .ok_or_else(|| invalid("grid needs dimensions like grid:2x5"))?;
                let (r, c) = dims
                    .split_once('x')
                    .ok_or_else(|| invalid(format!("bad grid dimensions {dims:?}")))?;
                Family::Grid {
                    rows: parse_int(r)?,
                    cols: parse_int(c)?,
                }
            }
            other => return Err(invalid(format!("unknown family {other:?}"))),
        };
        Ok(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Digraph {
        s.parse::<Family>().unwrap().generate().unwrap()
    }

    #[test]
    fn generate_examples() {
        let star = gen("star:4");
        assert_eq!((star.order(), star.arc_count()), (4, 3));
        assert_eq!(star.out_neighbors(0), &[1, 2, 3]);

        let r1 = gen("remark1:t=3,k=2");
        assert_eq!(r1.order(), 5);
        assert!(r1.has_arc(3, 4) && r1.has_arc(4, 0) && r1.has_arc(0, 1) && r1.has_arc(0, 2));

        let sharp = gen("thm33:k=2");
        assert_eq!(sharp.order(), 4);
        let arcs: Vec<_> = sharp.arcs().collect();
        assert_eq!(arcs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn linked_star_layouts() {
        let d = gen("remark2:t=2,k=2,sizes=4,4");
        assert_eq!(d.order(), 8);
        // stars at 0 and 4; first leaves 1 and 5 joined
        assert!(d.has_arc(1, 5));
        assert_eq!(d.arc_count(), 7);
        assert!(d.is_weakly_connected());

        let d = gen("thm23:k=2,sizes=3,3,3");
        assert!(d.has_arc(0, 3) && d.has_arc(3, 6));

        let d = gen("thm34:t=2,k=1,kp=2");
        assert_eq!(d.order(), 6);
        assert!(d.has_arc(0, 3));
    }

    #[test]
    fn constraints_are_enforced() {
        for bad in [
            "remark2:t=2,k=2,sizes=3,4",
            "remark2:t=1,k=1",
            "remark2:t=3,k=1,sizes=3,3",
            "thm34:k=2,kp=2",
            "thm33:k=1",
            "remark1:t=2,k=2",
            "cycle:1",
            "grid:0x3",
            "bogus:1",
            "star",
        ] {
            let r = bad.parse::<Family>().and_then(|f| f.generate());
            assert!(r.is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "path:5",
            "cycle:3",
            "star:4",
            "remark1:t=3,k=2",
            "remark2:t=2,k=2,sizes=4,5,seed=7",
            "thm23:t=3,k=1,sizes=2,2,2",
            "thm34:t=2,k=1,kp=2,sizes=3,3",
            "bipartite:k=2,m=3",
            "thm33:k=3",
            "grid:2x5",
        ] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn seeded_variants_keep_constraints() {
        for seed in 0..20 {
            let f = Family::LeafLinkedStars {
                k: 1,
                sizes: vec![3, 3, 4],
                seed: Some(seed),
            };
            let d = f.generate().unwrap();
            assert!(d.is_weakly_connected() && d.is_consistent());
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_small(2, false).unwrap().count(), 4);
        assert_eq!(enumerate_small(2, true).unwrap().count(), 3);
        assert_eq!(enumerate_small(1, false).unwrap().count(), 1);
        assert_eq!(enumerate_small(1, true).unwrap().count(), 0);
        assert_eq!(enumerate_small(3, false).unwrap().count(), 64);
        assert!(enumerate_small(5, false).is_err());
        assert!(enumerate_small(0, false).is_err());
    }

    #[test]
    fn random_digraph_extremes_and_fixture() {
        assert_eq!(random_digraph(5, 1.0, 3).unwrap().arc_count(), 20);
        assert_eq!(random_digraph(5, 0.0, 3).unwrap().arc_count(), 0);
        assert!(random_digraph(3, 1.5, 0).is_err());
        let a = random_digraph(6, 0.4, 42).unwrap();
        assert_eq!(a, random_digraph(6, 0.4, 42).unwrap());
        let pinned = [
            (0, 5), (1, 0), (1, 2), (1, 5), (3, 0), (3, 2),
            (3, 5), (4, 0), (4, 1), (4, 3), (4, 5), (5, 0),
        ];
        assert_eq!(a.arcs().collect::<Vec<_>>(), pinned);
    }
}
