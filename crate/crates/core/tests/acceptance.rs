//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use trdom::audit::{
    audit_bounds, audit_characterizations, audit_column_lemmas, audit_corollary_full_weight, audit_sharpness,
    AuditReport, Corpus, DEFAULT_KS,
};
use trdom::constructions::{
    extend_colors, grid_certificate, tkrdf_from_dominating_set, tkrdf_from_td_set, totalize_rkdf,
};
use trdom::digraph::Digraph;
use trdom::families::Family;
use trdom::grid::{dp_gamma_trk, GridSpec};
use trdom::rainbow::{is_dominating_set, is_krdf, is_tkrdf, is_total_dominating_set};
use trdom::solve::{gamma, gamma_rk, gamma_t, gamma_trk, SolveBudget};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

const SEED: u64 = 7;

fn budget() -> SolveBudget {
    SolveBudget::default()
}

fn trk(d: &Digraph, k: usize) -> Result<usize, String> {
    gamma_trk(d, k, budget()).map(|r| r.value).map_err(|e| e.to_string())
}

fn fam(s: &str) -> Result<Digraph, String> {
    s.parse::<Family>()
        .and_then(|f| f.generate())
        .map_err(|e| format!("{s}: {e}"))
}

fn dp(m: usize, n: usize, k: usize) -> Result<usize, String> {
    GridSpec::new(m, n, k)
        .and_then(dp_gamma_trk)
        .map(|r| r.value)
        .map_err(|e| e.to_string())
}

fn closed_forms() -> Outcome {
    let mut checked = 0;
    for n in 2..=12usize {
        for (k, want) in [(2, (3 * n).div_ceil(2)), (3, 2 * n)] {
            let got = dp(2, n, k)?;
            if got != want {
                return Err(format!("P_2xP_{n} k={k}: dp {got}, formula {want}"));
            }
            checked += 1;
        }
    }
    for n in 3..=12usize {
        let want = (8 * n).div_ceil(3) + usize::from(n % 3 == 0);
        let got = dp(3, n, 3)?;
        if got != want {
            return Err(format!("P_3xP_{n} k=3: dp {got}, formula {want}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} grids"))
}

fn oracle_equivalence() -> Outcome {
    let mut specs = Vec::new();
    for m in 1..=3 {
        for k in 1..=3 {
            for n in 1..=4 {
                if m * n >= 2 {
                    specs.push((m, n, k));
                }
            }
        }
    }
    specs.push((2, 5, 2));
    for &(m, n, k) in &specs {
        let spec = GridSpec::new(m, n, k).map_err(|e| e.to_string())?;
        let d = spec.digraph().map_err(|e| e.to_string())?;
        let (a, b) = (dp(m, n, k)?, trk(&d, k)?);
        if a != b {
            return Err(format!("P_{m}xP_{n} k={k}: dp {a}, exact {b}"));
        }
    }
    Ok(format!("{} grids", specs.len()))
}

fn theorem_audit() -> Outcome {
    let corpus = Corpus::concat(vec![
        Corpus::exhaustive(4).map_err(|e| e.to_string())?,
        Corpus::random(200, 8, SEED).map_err(|e| e.to_string())?,
    ]);
    let run = || -> trdom::error::Result<AuditReport> {
        let mut r = audit_bounds(&corpus, &DEFAULT_KS, budget())?;
        r.extend(audit_sharpness(budget())?);
        r.extend(audit_corollary_full_weight(&corpus, &DEFAULT_KS, budget())?);
        r.extend(audit_characterizations(&corpus, &DEFAULT_KS, budget())?);
        Ok(r)
    };
    let report = run().map_err(|e| e.to_string())?;
    let bad: Vec<_> = report
        .checks
        .iter()
        .filter(|c| !c.violations.is_empty())
        .map(|c| format!("{} ({})", c.id, c.violations.len()))
        .collect();
    if !bad.is_empty() {
        return Err(format!("violations in {}", bad.join(", ")));
    }
    Ok(format!("{} checks over {} digraphs, 0 violations", report.checks.len(), corpus.len()))
}

fn sharpness() -> Outcome {
    let mut lines = Vec::new();
    let mut expect = |name: &str, lhs: usize, rhs: usize| -> Result<(), String> {
        if lhs != rhs {
            return Err(format!("{name}: {lhs} != {rhs}"));
        }
        lines.push(name.to_string());
        Ok(())
    };

    let d = fam("remark2:t=2,k=2")?;
    let g = gamma(&d, budget()).map_err(|e| e.to_string())?.value;
    expect("remark2 (k+1)γ", trk(&d, 2)?, 3 * g)?;

    let d = fam("bipartite:k=2,m=3")?;
    let rk = gamma_rk(&d, 2, budget()).map_err(|e| e.to_string())?.value;
    expect("bipartite 2γ_rk-k+1", trk(&d, 2)?, 2 * rk - 1)?;

    let d = fam("thm33:k=2")?;
    let out = d.degrees().map_err(|e| e.to_string())?.max_out;
    expect("thm33 degree bound", trk(&d, 2)?, (2 * d.order() + 1).div_ceil(out + 2))?;

    let d = fam("thm34:t=2,k=1,kp=2")?;
    let (a, c) = (trk(&d, 1)?, trk(&d, 2)?);
    expect("thm34 colour extension", c, a + a)?;

    let d = fam("path:3")?;
    let out = d.degrees().map_err(|e| e.to_string())?.max_out;
    expect("P_3 degree bound", trk(&d, 1)?, (d.order() + 1).div_ceil(out + 1))?;

    Ok(lines.join(", "))
}

fn certificate_soundness() -> Outcome {
    let corpus = Corpus::standard(SEED).map_err(|e| e.to_string())?;
    let mut verified = 0usize;
    let mut check = |ok: bool, what: &str, id: &str| -> Result<(), String> {
        if !ok {
            return Err(format!("{what} rejected on {id}"));
        }
        verified += 1;
        Ok(())
    };
    let err = |e: trdom::error::Error| e.to_string();
    for inst in &corpus.instances {
        let (d, id) = (&inst.digraph, inst.id.as_str());
        let n = d.order();
        let g = gamma(d, budget()).map_err(err)?;
        let gt = gamma_t(d, budget()).map_err(err)?;
        let s = g.vertex_set().ok_or("γ witness")?;
        let x = gt.vertex_set().ok_or("γ_t witness")?;
        check(is_dominating_set(d, s), "γ witness", id)?;
        check(is_total_dominating_set(d, x), "γ_t witness", id)?;
        for k in DEFAULT_KS {
            let r = gamma_trk(d, k, budget()).map_err(err)?;
            let rk = gamma_rk(d, k, budget()).map_err(err)?;
            let f = r.assignment().ok_or("γ_trk witness")?;
            let h = rk.assignment().ok_or("γ_rk witness")?;
            check(is_tkrdf(d, f).map_err(err)? && f.weight() == r.value, "γ_trk witness", id)?;
            check(is_krdf(d, h) && h.weight() == rk.value, "γ_rk witness", id)?;
            check(is_tkrdf(d, &tkrdf_from_dominating_set(d, s, k).map_err(err)?).map_err(err)?, "dominating-set construction", id)?;
            check(is_tkrdf(d, &tkrdf_from_td_set(d, x, k).map_err(err)?).map_err(err)?, "TD-set construction", id)?;
            check(is_tkrdf(d, &extend_colors(d, f, k + 1).map_err(err)?).map_err(err)?, "colour extension", id)?;
            if d.is_weakly_connected() && n >= k.max(2) {
                check(is_tkrdf(d, &totalize_rkdf(d, h).map_err(err)?).map_err(err)?, "totalization", id)?;
            }
        }
    }
    for (m, k) in [(2, 2), (2, 3), (3, 3)] {
        for n in m..=12 {
            let spec = GridSpec::new(m, n, k).map_err(err)?;
            let d = spec.digraph().map_err(err)?;
            let f = grid_certificate(spec).map_err(err)?;
            check(is_tkrdf(&d, &f).map_err(err)?, "grid certificate", &format!("P_{m}xP_{n}"))?;
            let r = dp_gamma_trk(spec).map_err(err)?;
            check(is_tkrdf(&d, r.assignment().ok_or("dp witness")?).map_err(err)?, "dp witness", &format!("P_{m}xP_{n}"))?;
        }
    }
    Ok(format!("{verified} witnesses verified, 0 rejections"))
}

fn k1_reduction() -> Outcome {
    let corpus = Corpus::exhaustive(4).map_err(|e| e.to_string())?;
    for inst in &corpus.instances {
        let a = trk(&inst.digraph, 1)?;
        let b = gamma_t(&inst.digraph, budget()).map_err(|e| e.to_string())?.value;
        if a != b {
            return Err(format!("{}: γ_tr1 {a}, γ_t {b}", inst.id));
        }
    }
    Ok(format!("{} digraphs", corpus.len()))
}

fn column_lemmas() -> Outcome {
    let report = audit_column_lemmas(10).map_err(|e| e.to_string())?;
    let check = report.check("lemma.columns").ok_or("lemma.columns missing")?;
    if !check.violations.is_empty() {
        let first = &check.violations[0];
        return Err(format!("{} violations, first {} {}", check.violations.len(), first.instance, first.detail));
    }
    Ok(format!("{} optima", check.instances_tested))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 closed forms", Duration::from_secs(10), closed_forms),
        ("2 dp = exact solver", Duration::from_secs(60), oracle_equivalence),
        ("3 theorem audit", Duration::from_secs(600), theorem_audit),
        ("4 sharpness witnesses", Duration::from_secs(600), sharpness),
        ("5 certificate soundness", Duration::from_secs(600), certificate_soundness),
        ("6 k=1 reduction", Duration::from_secs(600), k1_reduction),
        ("7 column lemmas", Duration::from_secs(600), column_lemmas),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > limit => Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS  criterion {name}: {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg} [{elapsed:.2?}]");
            }
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
