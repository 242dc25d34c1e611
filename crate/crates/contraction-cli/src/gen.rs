//! `gen`: write a generated instance in the text graph format.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use contraction::instances::{
    gen_basic, gen_bipartite_lollipop, gen_clique_lollipop, gen_indset_reduction, gen_layered,
    gen_partition_cycle, gnp, gnp_any, random_bipartite, random_close_to_one, random_girth6, rng,
    BasicFamily, Lengths,
};
use contraction::io::{write_graph, ToleranceLine};
use contraction::rational::parse_rational;

use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Tree,
    Gnp,
    Bipartite,
    Girth6,
    Layered,
    /// Close-to-one partition instance on n numbers, as a weighted cycle.
    Partition,
    /// Clique reduction over a random G(n, p) base graph.
    CliqueLollipop,
    /// Bipartite clique reduction over a random G(n, p) base graph.
    BipartiteLollipop,
    /// Independent-set reduction over a random connected G(n, p) base graph.
    Indset,
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Edge probability for random graphs.
    #[arg(long, default_value = "1/2")]
    p: String,
    /// Layer size for `layered`.
    #[arg(long)]
    d: Option<usize>,
    /// β for `clique-lollipop`.
    #[arg(long, default_value = "1")]
    beta: String,
    /// Random rational lengths for `tree` instead of unit lengths.
    #[arg(long)]
    rational: bool,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

pub fn cmd_gen(args: &GenArgs) -> Result<()> {
    let n = args.n;
    let p = parse_rational(&args.p).context("--p")?;
    let mut r = rng(args.seed);
    let (graph, tolerance) = match args.family {
        Family::Path => (gen_basic(&BasicFamily::Path { n }, args.seed)?, None),
        Family::Cycle => (gen_basic(&BasicFamily::Cycle { n }, args.seed)?, None),
        Family::Star => (gen_basic(&BasicFamily::Star { n }, args.seed)?, None),
        Family::Tree => {
            let lengths = if args.rational {
                Lengths::RandomRational
            } else {
                Lengths::Unit
            };
            (
                gen_basic(&BasicFamily::RandomTree { n, lengths }, args.seed)?,
                None,
            )
        }
        Family::Gnp => (gen_basic(&BasicFamily::Gnp { n, p }, args.seed)?, None),
        Family::Bipartite => (random_bipartite(n, &p, &mut r)?, None),
        Family::Girth6 => (random_girth6(n, &mut r)?, None),
        Family::Layered => {
            let Some(d) = args.d else {
                bail!("layered needs --d");
            };
            (gen_layered(n, d)?, None)
        }
        Family::Partition | Family::CliqueLollipop | Family::BipartiteLollipop | Family::Indset => {
            let instance = match args.family {
                Family::Partition => gen_partition_cycle(&random_close_to_one(n, &mut r)?)?,
                Family::CliqueLollipop => {
                    let beta = parse_rational(&args.beta).context("--beta")?;
                    gen_clique_lollipop(&gnp_any(n, &p, &mut r)?, &beta)?
                }
                Family::BipartiteLollipop => gen_bipartite_lollipop(&gnp_any(n, &p, &mut r)?)?,
                _ => gen_indset_reduction(&gnp(n, &p, &mut r)?)?,
            };
            let line = ToleranceLine {
                tolerance: instance.tolerance,
                weak: instance.weak,
            };
            (instance.graph, Some(line))
        }
    };
    let family = args
        .family
        .to_possible_value()
        .unwrap()
        .get_name()
        .to_string();
    let text = format!(
        "# family={family} n={n} seed={}\n{}",
        args.seed,
        write_graph(&graph, tolerance.as_ref())
    );
    fs::write(&args.out, text).with_context(|| format!("cannot write {}", args.out.display()))?;
    let mut report = Report::new("gen");
    report.push("family", family);
    report.push("seed", args.seed);
    report.push("n", graph.n());
    report.push("m", graph.m());
    if let Some(t) = &tolerance {
        report.push("tolerance", &t.tolerance);
        report.push("weak", t.weak);
    }
    report.push("out", args.out.display());
    report.print();
    Ok(())
}
