use trdom::digraph::Digraph;
use trdom::families::Family;
use trdom::grid::{dp_gamma_trk, GridSpec};
use trdom::rainbow::{is_tkrdf, ColorSet, RainbowAssignment};
use trdom::solve::{gamma, gamma_rk, gamma_t, gamma_trk, minimum_sets, SolveBudget};
use trdom::vertex_set::VertexSet;

fn fam(s: &str) -> Digraph {
    s.parse::<Family>().unwrap().generate().unwrap()
}

fn b() -> SolveBudget {
    SolveBudget::default()
}

fn trk(d: &Digraph, k: usize) -> usize {
    gamma_trk(d, k, b()).unwrap().value
}

#[test]
fn star_with_tail_has_unique_packing_gamma_set() {
    for k in 1..=3 {
        for t in k + 1..=k + 2 {
            let d = fam(&format!("remark1:t={t},k={k}"));
            let sets = minimum_sets(&d, false, b()).unwrap();
            let x = t;
            assert_eq!(sets, vec![VertexSet::from_vertices(t + 2, [0, x]).unwrap()]);
            assert!(d.is_packing(&sets[0]));

            let mut f = RainbowAssignment::uniform(t + 2, k, ColorSet::EMPTY).unwrap();
            f.set(0, ColorSet::full(k));
            f.set(x, ColorSet::singleton(1));
            f.set(x + 1, ColorSet::singleton(1));
            assert!(is_tkrdf(&d, &f).unwrap());
            assert_eq!(f.weight(), k + 2);
            assert!(trk(&d, k) <= k + 2);
            assert!(k + 2 < 2 * (k + 1));
        }
    }
}

#[test]
fn leaf_linked_stars_attain_dominating_bound() {
    for (k, t) in [(1usize, 2usize), (2, 2), (1, 3)] {
        let d = fam(&format!("remark2:t={t},k={k}"));
        assert_eq!(gamma(&d, b()).unwrap().value, t);
        assert_eq!(trk(&d, k), (k + 1) * t);
    }
}

#[test]
fn center_linked_stars_have_equal_rainbow_numbers() {
    for (k, sizes) in [(1, "2,2"), (2, "3,3"), (2, "3,4,3")] {
        let d = fam(&format!("thm23:k={k},sizes={sizes}"));
        let centres = sizes.split(',').count();
        assert_eq!(gamma_rk(&d, k, b()).unwrap().value, k * centres);
        assert_eq!(trk(&d, k), k * centres);
    }
}

#[test]
fn bipartite_attains_rainbow_upper_bound() {
    for k in 1..=3 {
        for m in 1..=3 {
            let d = fam(&format!("bipartite:k={k},m={m}"));
            let rk = gamma_rk(&d, k, b()).unwrap().value;
            let t = trk(&d, k);
            assert_eq!((rk, t), (k, k + 1), "k={k} m={m}");
            assert_eq!(t, 2 * rk - k + 1);

            let mut g = RainbowAssignment::uniform(k + m, k, ColorSet::EMPTY).unwrap();
            for i in 0..k {
                g.set(i, ColorSet::singleton(i + 1));
            }
            g.set(k, ColorSet::singleton(1));
            assert!(is_tkrdf(&d, &g).unwrap());
        }
    }
}

#[test]
fn paths_and_cycles_need_every_vertex() {
    for k in 2..=3 {
        for n in 2..=8usize {
            assert_eq!(trk(&fam(&format!("path:{n}")), k), n);
            assert_eq!(trk(&fam(&format!("cycle:{n}")), k), n);
        }
    }
    assert_eq!(trk(&fam("cycle:5"), 2), 5);
    assert_eq!(trk(&fam("path:6"), 3), 6);

    // a chord gives in-degree 2, so k = 3 is not above 4
    let chorded = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
    let deg = chorded.degrees().unwrap();
    assert_eq!((deg.max_in, deg.max_out), (2, 2));
    assert!(3 <= deg.max_in * deg.max_in);
}

#[test]
fn out_degree_bound_is_attained() {
    let p3 = fam("path:3");
    assert_eq!(trk(&p3, 1), 2);
    assert_eq!((3 + 1usize).div_ceil(1 + 1), 2);

    for k in 2..=4usize {
        let d = fam(&format!("thm33:k={k}"));
        assert_eq!(d.order(), 2 * k);
        assert_eq!(d.degrees().unwrap().max_out, k + 1);
        assert_eq!(trk(&d, k), k);
        assert_eq!((2 * k * k + 1).div_ceil(2 * k + 1), k);
    }
}

#[test]
fn color_extension_bound_is_attained() {
    for (k, kp) in [(1, 2), (1, 3), (2, 3)] {
        let d = fam(&format!("thm34:t=2,k={k},kp={kp}"));
        let (a, c) = (trk(&d, k), trk(&d, kp));
        assert_eq!((a, c), (2 * k, 2 * kp));
        assert_eq!(c, a + (kp - k) * (a / k));
    }
}

#[test]
fn order_range_is_attained_for_small_orders() {
    for n in 2..=3 {
        for k in n..=3 {
            let d = fam(&format!("cycle:{n}"));
            assert_eq!(trk(&d, k), n);
        }
    }
}

#[test]
fn k1_is_total_domination() {
    for s in ["star:5", "cycle:6", "thm33:k=3", "grid:2x3", "remark2:t=2,k=1"] {
        let d = fam(s);
        assert_eq!(trk(&d, 1), gamma_t(&d, b()).unwrap().value, "{s}");
    }
}

#[test]
fn grid_closed_forms() {
    for n in 2..=12usize {
        assert_eq!(dp_gamma_trk(GridSpec::new(2, n, 2).unwrap()).unwrap().value, n + n.div_ceil(2));
        assert_eq!(dp_gamma_trk(GridSpec::new(2, n, 3).unwrap()).unwrap().value, 2 * n);
    }
    for n in 3..=12usize {
        let v = dp_gamma_trk(GridSpec::new(3, n, 3).unwrap()).unwrap().value;
        if n % 3 == 0 {
            assert_eq!(v, (8 * n).div_ceil(3) + 1, "n={n}");
        } else {
            assert_eq!(v, 3 * n - (n - 2).div_ceil(3), "n={n}");
            assert_eq!(v, (8 * n).div_ceil(3), "n={n}");
        }
    }
    assert_eq!(dp_gamma_trk(GridSpec::new(2, 5, 2).unwrap()).unwrap().value, 8);
    assert_eq!(dp_gamma_trk(GridSpec::new(3, 9, 3).unwrap()).unwrap().value, 25);
}
