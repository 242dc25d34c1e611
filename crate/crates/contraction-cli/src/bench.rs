//! `bench`: a method × instance matrix as CSV sorted by (instance, method).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use contraction::feasibility::{check_contraction, check_weak_contraction};
use contraction::graph::{apply_contraction, EdgeSet, Graph};
use contraction::io::parse_graph;
use rayon::prelude::*;

use crate::affine;
use crate::solve::{solve, Method, Params, SolveError};

pub const HEADER: &str = "instance,method,status,phi,size,quotient_m,quotient_n,wall_ms";

#[derive(Debug, clap::Args)]
pub struct BenchArgs {
    /// Directory of `.graph` files.
    #[arg(long)]
    dir: PathBuf,
    /// Comma-separated methods; all by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    methods: Vec<Method>,
    /// Overrides each file's `t` line.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    weak: bool,
    #[arg(long, default_value = "2")]
    k: String,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Row {
    instance: String,
    method: Method,
    status: &'static str,
    /// Φ, |C|, m(G/C), n(G/C), wall time in ms.
    numbers: Option<(usize, usize, usize, usize, f64)>,
}

fn run_one(g: &Graph, method: Method, params: &Params) -> (&'static str, Option<(EdgeSet, f64)>) {
    if params.weak
        && method.uses_tolerance()
        && !matches!(method, Method::Brute | Method::TreeDpWeak)
    {
        return ("n/a", None);
    }
    let start = Instant::now();
    let params = Params {
        weak: params.weak || method == Method::TreeDpWeak,
        ..params.clone()
    };
    match solve(g, method, &params) {
        Ok(solved) => {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let t = solved.stated.as_dyn();
            let verdict = if solved.weak {
                check_weak_contraction(g, t, &solved.contracted)
            } else {
                check_contraction(g, t, &solved.contracted)
            };
            let status = match verdict {
                Ok(v) if v.is_feasible() => "ok",
                _ => "infeasible",
            };
            (status, Some((solved.contracted, ms)))
        }
        Err(SolveError::Violated { contracted, .. }) => (
            "infeasible",
            Some((contracted, start.elapsed().as_secs_f64() * 1e3)),
        ),
        Err(SolveError::Mismatch(_)) => ("n/a", None),
    }
}

/// Returns whether any row is infeasible.
pub fn cmd_bench(args: &BenchArgs) -> Result<bool> {
    let mut files: Vec<PathBuf> = fs::read_dir(&args.dir)
        .with_context(|| format!("cannot read {}", args.dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no .graph files in {}", args.dir.display());
    }
    let override_tolerance = match (&args.alpha, &args.beta) {
        (Some(a), Some(b)) => Some(affine(a, b)?),
        (None, None) => None,
        _ => bail!("--alpha and --beta must be given together"),
    };
    let methods = if args.methods.is_empty() {
        Method::value_variants().to_vec()
    } else {
        args.methods.clone()
    };
    let mut jobs = Vec::new();
    for path in &files {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let file = parse_graph(&text).with_context(|| format!("in {}", path.display()))?;
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let params = Params {
            tolerance: override_tolerance
                .clone()
                .or_else(|| file.tolerance.as_ref().map(|t| t.tolerance.clone())),
            weak: args.weak || file.tolerance.as_ref().is_some_and(|t| t.weak),
            k: Some(args.k.clone()),
            d: Some(args.d),
            emit_tables: false,
        };
        for &method in &methods {
            jobs.push((name.clone(), file.graph.clone(), method, params.clone()));
        }
    }
    let mut rows: Vec<Row> = jobs
        .into_par_iter()
        .map(|(instance, g, method, params)| {
            let (status, result) = run_one(&g, method, &params);
            let numbers = result.map(|(c, ms)| {
                let r = apply_contraction(&g, &c);
                (r.phi, c.len(), r.quotient.m(), r.quotient.n(), ms)
            });
            Row {
                instance,
                method,
                status,
                numbers,
            }
        })
        .collect();
    rows.sort_by(|a, b| (&a.instance, a.method.name()).cmp(&(&b.instance, b.method.name())));
    let mut csv = format!("{HEADER}\n");
    for row in &rows {
        let numbers = match row.numbers {
            Some((phi, size, qm, qn, ms)) => format!("{phi},{size},{qm},{qn},{ms:.3}"),
            None => ",,,,".to_string(),
        };
        writeln!(
            csv,
            "{},{},{},{numbers}",
            row.instance,
            row.method.name(),
            row.status
        )
        .unwrap();
    }
    match &args.out {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{csv}"),
    }
    Ok(rows.iter().any(|r| r.status == "infeasible"))
}
