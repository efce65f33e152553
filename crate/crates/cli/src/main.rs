use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trdom::audit::{run_suite, Suite};
use trdom::digraph::Digraph;
use trdom::error::Error;
use trdom::families::Family;
use trdom::grid::{closed_form, dp_gamma_trk, GridSpec};
use trdom::rainbow::{find_violation, RainbowAssignment};
use trdom::solve::{gamma, gamma_t, RainbowSolver, SolveBudget, SolveResult};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;

/// Exact total k-rainbow domination on digraphs.
#[derive(Parser)]
#[command(name = "trdom", version)]
struct Cli {
    /// Worker threads for parallel work (default: available cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a domination parameter exactly and print it as JSON
    Solve(SolveArgs),
    /// Check a rainbow assignment against a digraph
    Verify(VerifyArgs),
    /// Column DP for the grid P_m x P_n
    Dp(DpArgs),
    /// Run a theorem audit suite
    Audit(AuditArgs),
    /// Print a generated family member as an edge list or DOT
    Gen(GenArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Edge-list file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Family string, e.g. `star:4`, `grid:2x5`, `remark2:t=2,k=2,sizes=4,4`
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Node budget for the exact search
    #[arg(long, default_value_t = 1_000_000_000)]
    max_nodes: u64,
    /// Wall-clock cap in seconds
    #[arg(long, default_value_t = 300.0)]
    time_cap: f64,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Param {
    Gamma,
    GammaT,
    GammaRk,
    GammaTrk,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum)]
    param: Param,
    /// Number of colours (required for gamma_rk and gamma_trk)
    #[arg(long)]
    k: Option<usize>,
    /// Omit the witness from the output
    #[arg(long)]
    no_certificate: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    /// Assignment JSON: {"k": 2, "values": [[1, 2], [], ...]}
    #[arg(long)]
    assignment: PathBuf,
    /// Expected k; a different k in the file is an error
    #[arg(long)]
    k: Option<usize>,
    /// Also require the labelled vertices to induce no isolated vertex
    #[arg(long)]
    total: bool,
}

#[derive(Args)]
struct DpArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Include the optimal assignment
    #[arg(long)]
    certificate: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// bounds, corollaries, characterizations, grids, lemmas or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Seed of the random corpus
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Directory for audit-<suite>.json and audit-<suite>.txt
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: String,
    /// Graphviz output instead of the edge list
    #[arg(long)]
    dot: bool,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IsolatedVertex(_) | Error::StateSpaceTooLarge { .. } => EXIT_PRECONDITION,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::InvalidInput(_) | Error::Parse { .. } => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Dp(a) => cmd_dp(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load(source: &Source) -> Result<Digraph, Failure> {
    match (&source.file, &source.family) {
        (Some(path), _) => Ok(Digraph::parse_edge_list(&read(path)?)?),
        (_, Some(spec)) => Ok(spec.parse::<Family>()?.generate()?),
        _ => Err(Failure::usage("give --file or --family")),
    }
}

fn budget(b: &BudgetArgs) -> Result<SolveBudget, Failure> {
    if !(b.time_cap.is_finite() && b.time_cap > 0.0) {
        return Err(Failure::usage("--time-cap must be a positive number of seconds"));
    }
    Ok(SolveBudget::new(b.max_nodes, Duration::from_secs_f64(b.time_cap))?)
}

fn print_json(v: &Value) {
    let _ = writeln!(io::stdout(), "{v}");
}

fn cmd_solve(a: SolveArgs) -> Result<u8, Failure> {
    let d = load(&a.source)?;
    let budget = budget(&a.budget)?;
    let (name, k) = match a.param {
        Param::Gamma => ("gamma", None),
        Param::GammaT => ("gamma_t", None),
        Param::GammaRk | Param::GammaTrk => {
            let k = a.k.ok_or_else(|| Failure::usage("--k is required for rainbow parameters"))?;
            let name = if matches!(a.param, Param::GammaRk) { "gamma_rk" } else { "gamma_trk" };
            (name, Some(k))
        }
    };
    let outcome: Result<SolveResult, Error> = match (a.param, k) {
        (Param::Gamma, _) => gamma(&d, budget),
        (Param::GammaT, _) => gamma_t(&d, budget),
        (Param::GammaRk, Some(k)) => RainbowSolver::new(k, false).budget(budget).solve(&d),
        (_, Some(k)) => RainbowSolver::new(k, true).budget(budget).tie_break(false).solve(&d),
        _ => unreachable!("k checked above"),
    };
    match outcome {
        Ok(r) => {
            let certificate = if a.no_certificate {
                Value::Null
            } else {
                serde_json::to_value(&r.certificate).expect("json")
            };
            print_json(&json!({
                "parameter": name,
                "k": k,
                "value": r.value,
                "certificate": certificate,
                "nodes": r.nodes_explored,
            }));
            Ok(0)
        }
        Err(Error::BudgetExceeded { nodes, incumbent }) => {
            let incumbent = incumbent.map(|inc| {
                json!({
                    "value": inc.value,
                    "certificate": serde_json::to_value(&inc.certificate).expect("json"),
                })
            });
            print_json(&json!({
                "parameter": name,
                "k": k,
                "value": null,
                "incumbent": incumbent,
                "nodes": nodes,
            }));
            eprintln!("error: search budget exhausted after {nodes} nodes");
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let d = load(&a.source)?;
    let f = RainbowAssignment::from_json(&read(&a.assignment)?)?;
    if let Some(k) = a.k {
        if k != f.k() {
            return Err(Failure::usage(format!("assignment has k = {}, expected {k}", f.k())));
        }
    }
    if a.total {
        if let Some(v) = d.isolated_vertex() {
            return Err(Error::IsolatedVertex(v).into());
        }
    }
    match find_violation(&d, &f, a.total)? {
        None => {
            println!("valid {} (weight {})", if a.total { "TkRDF" } else { "kRDF" }, f.weight());
            Ok(0)
        }
        Some(v) => {
            println!("invalid: {v}");
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_dp(a: DpArgs) -> Result<u8, Failure> {
    let spec = GridSpec::new(a.m, a.n, a.k)?;
    let r = dp_gamma_trk(spec)?;
    let formula = closed_form(spec);
    let mut out = json!({
        "m": a.m,
        "n": a.n,
        "k": a.k,
        "value": r.value,
        "formula": formula,
        "agree": formula.map(|f| f == r.value),
    });
    if a.certificate {
        out["certificate"] = serde_json::to_value(&r.certificate).expect("json");
    }
    print_json(&out);
    Ok(0)
}

fn cmd_audit(a: AuditArgs) -> Result<u8, Failure> {
    let suite: Suite = a.suite.parse()?;
    let report = run_suite(suite, a.seed, budget(&a.budget)?)?;
    let table = report.to_table();
    let _ = io::stdout().write_all(table.as_bytes());
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
        let stem = dir.join(format!("audit-{}", suite.name()));
        let write = |ext: &str, body: &str| {
            let path = stem.with_extension(ext);
            fs::write(&path, body).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
        };
        write("json", &report.to_json())?;
        write("txt", &table)?;
    }
    Ok(if report.is_clean() { 0 } else { EXIT_FAIL })
}

fn cmd_gen(a: GenArgs) -> Result<u8, Failure> {
    let family: Family = a.family.parse()?;
    let d = family.generate()?;
    let body = if a.dot {
        d.to_dot(&family.to_string())
    } else {
        d.to_edge_list()
    };
    match &a.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => {
            let _ = io::stdout().write_all(body.as_bytes());
        }
    }
    Ok(0)
}
