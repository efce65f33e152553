//! Naive enumeration of every vertex subset and every labelling, used as an
//! oracle for the solvers. Shares nothing with the solver code beyond the
//! digraph type.

use trdom::audit::Corpus;
use trdom::digraph::Digraph;
use trdom::families::Family;
use trdom::solve::{gamma, gamma_rk, gamma_t, gamma_trk, SolveBudget};

fn dominates(d: &Digraph, mask: u32) -> bool {
    (0..d.order()).all(|v| mask >> v & 1 == 1 || d.in_neighbors(v).iter().any(|&u| mask >> u & 1 == 1))
}

fn no_isolated_inside(d: &Digraph, mask: u32) -> bool {
    (0..d.order())
        .filter(|v| mask >> v & 1 == 1)
        .all(|v| d.out_neighbors(v).iter().chain(d.in_neighbors(v)).any(|&w| mask >> w & 1 == 1))
}

fn naive_gamma(d: &Digraph, total: bool) -> usize {
    (0u32..1 << d.order())
        .filter(|&m| dominates(d, m) && (!total || (m != 0 && no_isolated_inside(d, m))))
        .map(|m| m.count_ones() as usize)
        .min()
        .expect("V qualifies")
}

/// Minimum over all `(2^k)^n` labellings.
fn naive_rainbow(d: &Digraph, k: usize, total: bool) -> usize {
    let n = d.order();
    let full = (1u32 << k) - 1;
    let mut labels = vec![0u32; n];
    let mut best = usize::MAX;
    loop {
        let weight: usize = labels.iter().map(|l| l.count_ones() as usize).sum();
        if weight < best {
            let covered = (0..n).all(|v| {
                labels[v] != 0 || d.in_neighbors(v).iter().fold(0, |acc, &u| acc | labels[u]) == full
            });
            let positive = labels.iter().enumerate().fold(0u32, |m, (v, &l)| if l != 0 { m | 1 << v } else { m });
            if covered && (!total || no_isolated_inside(d, positive)) {
                best = weight;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            labels[i] += 1;
            if labels[i] <= full {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

fn check_all(d: &Digraph, ks: &[usize], id: &str) {
    let b = SolveBudget::default();
    assert_eq!(gamma(d, b).unwrap().value, naive_gamma(d, false), "γ {id}");
    assert_eq!(gamma_t(d, b).unwrap().value, naive_gamma(d, true), "γ_t {id}");
    for &k in ks {
        assert_eq!(gamma_rk(d, k, b).unwrap().value, naive_rainbow(d, k, false), "γ_rk {id} k={k}");
        assert_eq!(gamma_trk(d, k, b).unwrap().value, naive_rainbow(d, k, true), "γ_trk {id} k={k}");
    }
}

#[test]
fn solvers_match_enumeration_on_exhaustive_corpus() {
    let corpus = Corpus::exhaustive(4).unwrap();
    assert_eq!(corpus.len(), 3 + 54 + 3861);
    for inst in &corpus.instances {
        check_all(&inst.digraph, &[1, 2, 3], &inst.id);
    }
}

#[test]
fn solvers_match_enumeration_on_random_digraphs() {
    let corpus = Corpus::random(40, 6, 11).unwrap();
    for inst in &corpus.instances {
        check_all(&inst.digraph, &[1, 2], &inst.id);
    }
}

#[test]
fn worked_examples() {
    let star = "star:4".parse::<Family>().unwrap().generate().unwrap();
    assert_eq!(naive_rainbow(&star, 2, true), 3);
    assert_eq!(naive_rainbow(&star, 2, false), 2);
    assert_eq!(naive_gamma(&star, true), 2);

    let c4 = "cycle:4".parse::<Family>().unwrap().generate().unwrap();
    assert_eq!(naive_gamma(&c4, true), 3);
    assert_eq!(naive_gamma(&c4, false), 2);

    let remark1 = "remark1:t=3,k=2".parse::<Family>().unwrap().generate().unwrap();
    assert_eq!(naive_rainbow(&remark1, 2, true), 4);
    assert_eq!(naive_gamma(&remark1, false), 2);

    let p2 = "path:2".parse::<Family>().unwrap().generate().unwrap();
    assert_eq!(naive_rainbow(&p2, 1, true), 2);
}
