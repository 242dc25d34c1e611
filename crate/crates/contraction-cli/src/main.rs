//! `contract`: check, solve, generate, benchmark, and compose contractions.
//!
//! Exit codes: 0 success, 2 infeasible result, 3 usage or input error.

mod bench;
mod gen;
mod report;
mod solve;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use contraction::feasibility::{
    check_additive_endpoint_restricted, check_bipartite_unit_11, check_contraction,
    check_girth6_weak_20, check_weak_contraction, Verdict,
};
use contraction::graph::{apply_contraction, EdgeSet, Graph};
use contraction::io::{parse_edge_set, parse_graph, write_edge_set, GraphFile};
use contraction::rational::{int, parse_rational};
use contraction::AffineTolerance;

use crate::report::Report;
use crate::solve::{solve, Method, Params, SolveError};

#[derive(Debug, Parser)]
#[command(
    name = "contract",
    version,
    about = "Distance-preserving edge contractions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    General,
    AdditiveFast,
    Bip11,
    Girth6,
}

#[derive(Debug, clap::Args)]
struct ToleranceArgs {
    /// α as `num` or `num/den`; defaults to the graph file's `t` line.
    #[arg(long)]
    alpha: Option<String>,
    /// β as `num` or `num/den`; defaults to the graph file's `t` line.
    #[arg(long)]
    beta: Option<String>,
    /// Weak contraction (pairs inside a super-vertex are exempt).
    #[arg(long)]
    weak: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a contraction set against a tolerance.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[arg(long, value_enum, default_value = "general")]
        mode: CheckMode,
    },
    /// Compute a contraction set with one method.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        /// Parameter k for cluster (rational or `log`), topdeg, highdeg.
        #[arg(long)]
        k: Option<String>,
        /// Minimum degree D for mindeg.
        #[arg(long)]
        d: Option<usize>,
        /// Write the contraction set here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the DP tables here (tree-dp, tree-dp-weak).
        #[arg(long)]
        emit_tables: Option<PathBuf>,
    },
    /// Generate an instance file.
    Gen(gen::GenArgs),
    /// Run methods over every `.graph` file in a directory and print CSV.
    Bench(bench::BenchArgs),
    /// Contract with φ, then with ψ on the quotient, and check the union
    /// against ψ ∘ φ.
    Compose {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        phi_alpha: String,
        #[arg(long)]
        phi_beta: String,
        #[arg(long)]
        psi_alpha: String,
        #[arg(long)]
        psi_beta: String,
        #[arg(long)]
        weak: bool,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a successful run concluded.
enum Outcome {
    Ok,
    Infeasible,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<GraphFile> {
    parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn affine(alpha: &str, beta: &str) -> Result<AffineTolerance> {
    let alpha = parse_rational(alpha).context("--alpha")?;
    let beta = parse_rational(beta).context("--beta")?;
    Ok(AffineTolerance::new(alpha, beta)?)
}

/// Flags win over the file's `t` line; `--weak` or a weak `t` line selects
/// weak mode.
fn resolve_tolerance(
    args: &ToleranceArgs,
    file: &GraphFile,
) -> Result<(Option<AffineTolerance>, bool)> {
    let from_file = file.tolerance.as_ref();
    let weak = args.weak || from_file.is_some_and(|t| t.weak);
    let tolerance = match (&args.alpha, &args.beta) {
        (Some(a), Some(b)) => Some(affine(a, b)?),
        (None, None) => from_file.map(|t| t.tolerance.clone()),
        _ => bail!("--alpha and --beta must be given together"),
    };
    Ok((tolerance, weak))
}

fn verdict_outcome(report: &mut Report, verdict: &Verdict) -> Outcome {
    report.push("feasible", verdict.is_feasible());
    match verdict.violation() {
        Some(v) => {
            report.violation(v);
            Outcome::Infeasible
        }
        None => Outcome::Ok,
    }
}

fn cmd_check(graph: &Path, set: &Path, args: &ToleranceArgs, mode: CheckMode) -> Result<Outcome> {
    let file = load_graph(graph)?;
    let g = &file.graph;
    let c = parse_edge_set(&read(set)?, g.m()).with_context(|| format!("in {}", set.display()))?;
    let (tolerance, weak) = resolve_tolerance(args, &file)?;
    let t = tolerance.ok_or_else(|| anyhow!("no tolerance: pass --alpha and --beta"))?;
    let start = Instant::now();
    let verdict = match mode {
        CheckMode::General if weak => check_weak_contraction(g, &t, &c)?,
        CheckMode::General => check_contraction(g, &t, &c)?,
        CheckMode::AdditiveFast => {
            if weak || *t.alpha() != int(1) {
                bail!("additive-fast checks strict (1, beta) only");
            }
            check_additive_endpoint_restricted(g, t.beta(), &c)?
        }
        CheckMode::Bip11 => {
            if weak || t != AffineTolerance::of(int(1), int(1)) {
                bail!("bip11 checks strict (1, 1) only");
            }
            check_bipartite_unit_11(g, &c)?
        }
        CheckMode::Girth6 => {
            if !weak || t != AffineTolerance::of(int(2), int(0)) {
                bail!("girth6 checks weak (2, 0) only");
            }
            check_girth6_weak_20(g, &c)?
        }
    };
    let elapsed = start.elapsed();
    let mut report = Report::new("check");
    report.push("graph", graph.display());
    report.push("seed", "none");
    report.push("mode", mode.to_possible_value().unwrap().get_name());
    report.push("tolerance", &t);
    report.push("weak", weak);
    report.sizes(g, &c);
    let outcome = verdict_outcome(&mut report, &verdict);
    report.wall(elapsed);
    report.print();
    Ok(outcome)
}

fn fresh_check(g: &Graph, solved: &solve::Solved) -> Result<Verdict> {
    let t = solved.stated.as_dyn();
    Ok(if solved.weak {
        check_weak_contraction(g, t, &solved.contracted)?
    } else {
        check_contraction(g, t, &solved.contracted)?
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    graph: &Path,
    method: Method,
    args: &ToleranceArgs,
    k: Option<String>,
    d: Option<usize>,
    out: Option<&Path>,
    emit_tables: Option<&Path>,
) -> Result<Outcome> {
    let file = load_graph(graph)?;
    let g = &file.graph;
    let (tolerance, weak) = resolve_tolerance(args, &file)?;
    if weak && method.uses_tolerance() && !matches!(method, Method::Brute | Method::TreeDpWeak) {
        bail!("method {} does not solve weak contractions", method.name());
    }
    let params = Params {
        tolerance,
        weak: weak || method == Method::TreeDpWeak,
        k,
        d,
        emit_tables: emit_tables.is_some(),
    };
    let mut report = Report::new("solve");
    report.push("graph", graph.display());
    report.push("seed", "none");
    report.push("method", method.name());
    let start = Instant::now();
    let solved = match solve(g, method, &params) {
        Ok(s) => s,
        Err(SolveError::Mismatch(msg)) => bail!(msg),
        Err(SolveError::Violated {
            contracted,
            violation,
            stated,
        }) => {
            let elapsed = start.elapsed();
            report.push("tolerance", &stated);
            report.push("weak", false);
            report.sizes(g, &contracted);
            report.push("feasible", false);
            report.violation(&violation);
            report.wall(elapsed);
            report.print();
            if let Some(out) = out {
                write_file(out, &write_edge_set(&contracted))?;
            }
            return Ok(Outcome::Infeasible);
        }
    };
    let elapsed = start.elapsed();
    let verdict = fresh_check(g, &solved)?;
    report.push("tolerance", &solved.stated);
    report.push("weak", solved.weak);
    report.sizes(g, &solved.contracted);
    let outcome = verdict_outcome(&mut report, &verdict);
    report.wall(elapsed);
    if let Some(out) = out {
        write_file(out, &write_edge_set(&solved.contracted))?;
        report.push("out", out.display());
    }
    if let (Some(path), Some(tables)) = (emit_tables, &solved.tables) {
        write_file(path, tables)?;
        report.push("tables", path.display());
    }
    report.print();
    Ok(outcome)
}

#[allow(clippy::too_many_arguments)]
fn cmd_compose(
    graph: &Path,
    phi: AffineTolerance,
    psi: AffineTolerance,
    weak: bool,
    method: Method,
    out: Option<&Path>,
) -> Result<Outcome> {
    if !method.uses_tolerance() {
        bail!(
            "compose needs a method driven by the tolerance, not {}",
            method.name()
        );
    }
    let file = load_graph(graph)?;
    let g = &file.graph;
    let step = |h: &Graph, t: &AffineTolerance| -> Result<EdgeSet> {
        if h.m() == 0 {
            return Ok(EdgeSet::empty(0));
        }
        let params = Params {
            tolerance: Some(t.clone()),
            weak,
            ..Params::default()
        };
        solve(h, method, &params)
            .map(|s| s.contracted)
            .map_err(|e| anyhow!("{e}"))
    };
    let start = Instant::now();
    let first = step(g, &phi)?;
    let contraction = apply_contraction(g, &first);
    let second = step(&contraction.quotient, &psi)?;
    let union = first.union(&contraction.lift(&second));
    let composed = psi.compose(&phi);
    let verdict = if weak {
        check_weak_contraction(g, &composed, &union)?
    } else {
        check_contraction(g, &composed, &union)?
    };
    let elapsed = start.elapsed();
    let mut report = Report::new("compose");
    report.push("graph", graph.display());
    report.push("seed", "none");
    report.push("method", method.name());
    report.push("phi_tolerance", &phi);
    report.push("psi_tolerance", &psi);
    report.push("tolerance", &composed);
    report.push("weak", weak);
    report.push("first_size", first.len());
    report.push("second_size", second.len());
    report.sizes(g, &union);
    let outcome = verdict_outcome(&mut report, &verdict);
    report.wall(elapsed);
    if let Some(out) = out {
        write_file(out, &write_edge_set(&union))?;
        report.push("out", out.display());
    }
    report.print();
    Ok(outcome)
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Check {
            graph,
            set,
            tolerance,
            mode,
        } => cmd_check(&graph, &set, &tolerance, mode),
        Command::Solve {
            graph,
            method,
            tolerance,
            k,
            d,
            out,
            emit_tables,
        } => cmd_solve(
            &graph,
            method,
            &tolerance,
            k,
            d,
            out.as_deref(),
            emit_tables.as_deref(),
        ),
        Command::Gen(args) => gen::cmd_gen(&args).map(|()| Outcome::Ok),
        Command::Bench(args) => bench::cmd_bench(&args).map(|any_infeasible| {
            if any_infeasible {
                Outcome::Infeasible
            } else {
                Outcome::Ok
            }
        }),
        Command::Compose {
            graph,
            phi_alpha,
            phi_beta,
            psi_alpha,
            psi_beta,
            weak,
            method,
            out,
        } => {
            let phi = affine(&phi_alpha, &phi_beta)?;
            let psi = affine(&psi_alpha, &psi_beta)?;
            cmd_compose(&graph, phi, psi, weak, method, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Infeasible) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
