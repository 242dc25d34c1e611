//! Method dispatch shared by `solve`, `compose`, and `bench`.

use std::fmt;

use clap::ValueEnum;
use contraction::feasibility::Violation;
use contraction::graph::{EdgeSet, Graph};
use contraction::greedy::{greedy_cycle, greedy_path, unit_tree_additive};
use contraction::heuristics::{
    additive_highdegree, additive_topdegree, min_degree_clustering, multiplicative_contraction,
    HeuristicError, PartitionRadius,
};
use contraction::oracle::{brute_force_optimum_with, Objective, OracleConfig};
use contraction::rational::{int, parse_rational, Rational};
use contraction::tree_dp::{StrictTables, TreeError, WeakTables};
use contraction::{AffineTolerance, LogStretch, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Method {
    Brute,
    PathGreedy,
    CycleGreedy,
    TreeUnit,
    TreeDp,
    TreeDpWeak,
    Cluster,
    Topdeg,
    Highdeg,
    Mindeg,
}

impl Method {
    pub fn name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }

    /// Methods that take the affine tolerance as input.
    pub fn uses_tolerance(self) -> bool {
        matches!(
            self,
            Method::Brute
                | Method::PathGreedy
                | Method::CycleGreedy
                | Method::TreeUnit
                | Method::TreeDp
                | Method::TreeDpWeak
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct Params {
    pub tolerance: Option<AffineTolerance>,
    pub weak: bool,
    pub k: Option<String>,
    pub d: Option<usize>,
    pub emit_tables: bool,
}

/// The tolerance a method's output is checked against.
pub enum Stated {
    Affine(AffineTolerance),
    Log(LogStretch),
}

impl Stated {
    pub fn as_dyn(&self) -> &dyn Tolerance {
        match self {
            Stated::Affine(t) => t,
            Stated::Log(t) => t,
        }
    }
}

impl fmt::Display for Stated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stated::Affine(t) => write!(f, "{t}"),
            Stated::Log(t) => write!(f, "(log2({}), 1)", t.n()),
        }
    }
}

pub struct Solved {
    pub contracted: EdgeSet,
    pub stated: Stated,
    pub weak: bool,
    pub tables: Option<String>,
}

#[derive(Debug)]
pub enum SolveError {
    /// The method does not apply to this graph or parameter choice.
    Mismatch(String),
    /// A self-verifying method produced an infeasible set.
    Violated {
        contracted: EdgeSet,
        violation: Box<Violation>,
        stated: AffineTolerance,
    },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Mismatch(msg) => write!(f, "{msg}"),
            SolveError::Violated {
                violation, stated, ..
            } => {
                write!(f, "output is not a {stated}-contraction: {violation}")
            }
        }
    }
}

fn mismatch(msg: impl fmt::Display) -> SolveError {
    SolveError::Mismatch(msg.to_string())
}

fn need_tolerance(p: &Params, method: Method) -> Result<AffineTolerance, SolveError> {
    p.tolerance
        .clone()
        .ok_or_else(|| mismatch(format!("method {} needs --alpha and --beta", method.name())))
}

fn need_k(p: &Params, method: Method) -> Result<&str, SolveError> {
    p.k.as_deref()
        .ok_or_else(|| mismatch(format!("method {} needs --k", method.name())))
}

fn parse_k(text: &str) -> Result<Rational, SolveError> {
    parse_rational(text).map_err(|e| mismatch(format!("bad --k: {e}")))
}

/// Vertices of a path from its lower-id end, or None if `g` is not a path.
fn path_order(g: &Graph) -> Option<Vec<usize>> {
    if !g.is_tree() || (0..g.n()).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..g.n()).find(|&v| g.degree(v) <= 1)?;
    walk(g, start)
}

/// Vertices of a cycle from 0 toward its lower-id neighbour.
fn cycle_order(g: &Graph) -> Option<Vec<usize>> {
    if g.n() < 3 || g.m() != g.n() || !g.is_connected() || (0..g.n()).any(|v| g.degree(v) != 2) {
        return None;
    }
    walk(g, 0)
}

fn walk(g: &Graph, start: usize) -> Option<Vec<usize>> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < g.n() {
        let next = g
            .neighbors(cur)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| w != prev)
            .min()?;
        prev = cur;
        cur = next;
        order.push(cur);
    }
    Some(order)
}

fn positions_to_edges(g: &Graph, order: &[usize], positions: &[usize]) -> EdgeSet {
    let n = order.len();
    let ids = positions.iter().map(|&i| {
        g.edge_between(order[i], order[(i + 1) % n])
            .expect("consecutive vertices are adjacent")
    });
    EdgeSet::from_ids(g.m(), ids).expect("ids come from g")
}

fn tree_error(e: TreeError) -> SolveError {
    mismatch(e)
}

fn heuristic_error(e: HeuristicError) -> SolveError {
    mismatch(e)
}

pub fn solve(g: &Graph, method: Method, p: &Params) -> Result<Solved, SolveError> {
    if !g.is_connected() {
        return Err(mismatch("graph must be connected"));
    }
    let strict = |contracted, stated| Solved {
        contracted,
        stated: Stated::Affine(stated),
        weak: false,
        tables: None,
    };
    match method {
        Method::Brute => {
            let t = need_tolerance(p, method)?;
            let config = OracleConfig::from_env();
            let result = brute_force_optimum_with(g, &t, p.weak, Objective::Phi, config)
                .map_err(mismatch)?;
            Ok(Solved {
                contracted: result.witnesses[0].clone(),
                stated: Stated::Affine(t),
                weak: p.weak,
                tables: None,
            })
        }
        Method::PathGreedy => {
            let t = need_tolerance(p, method)?;
            let order = path_order(g).filter(|_| g.has_unit_lengths());
            let order = order.ok_or_else(|| mismatch("path-greedy needs a unit-length path"))?;
            let chosen = greedy_path(g.n(), &t).map_err(mismatch)?;
            Ok(strict(positions_to_edges(g, &order, &chosen), t))
        }
        Method::CycleGreedy => {
            let t = need_tolerance(p, method)?;
            let order = cycle_order(g).filter(|_| g.has_unit_lengths());
            let order = order.ok_or_else(|| mismatch("cycle-greedy needs a unit-length cycle"))?;
            let chosen = greedy_cycle(g.n(), &t).map_err(mismatch)?;
            Ok(strict(positions_to_edges(g, &order, &chosen), t))
        }
        Method::TreeUnit => {
            let t = need_tolerance(p, method)?;
            if *t.alpha() != int(1) || !t.beta().is_integer() {
                return Err(mismatch("tree-unit needs alpha = 1 and an integer beta"));
            }
            let beta = u64::try_from(t.beta().to_integer()).map_err(mismatch)?;
            let c = unit_tree_additive(g, beta).map_err(mismatch)?;
            Ok(strict(c, t))
        }
        Method::TreeDp => {
            let t = need_tolerance(p, method)?;
            let tables = StrictTables::build(g, &t).map_err(tree_error)?;
            let contracted = tables.reconstruct(tables.optimum());
            Ok(Solved {
                contracted,
                stated: Stated::Affine(t),
                weak: false,
                tables: p.emit_tables.then(|| tables.dump()),
            })
        }
        Method::TreeDpWeak => {
            let t = need_tolerance(p, method)?;
            let tables = WeakTables::build(g, &t).map_err(tree_error)?;
            let (s, entry) = tables
                .optimum()
                .ok_or_else(|| tree_error(TreeError::NoWeakSolution))?;
            let contracted = tables.reconstruct(s, entry);
            Ok(Solved {
                contracted,
                stated: Stated::Affine(t),
                weak: true,
                tables: p.emit_tables.then(|| tables.dump()),
            })
        }
        Method::Cluster => {
            let k = need_k(p, method)?;
            let radius = if k == "log" {
                PartitionRadius::LogN
            } else {
                PartitionRadius::Exact(parse_k(k)?)
            };
            let out = multiplicative_contraction(g, &radius).map_err(heuristic_error)?;
            let stated = match radius {
                PartitionRadius::Exact(k) => {
                    Stated::Affine(AffineTolerance::of(k * int(2) - int(1), int(1)))
                }
                PartitionRadius::LogN => {
                    Stated::Log(LogStretch::new(g.n() as u64).map_err(mismatch)?)
                }
            };
            Ok(Solved {
                contracted: out.contracted,
                stated,
                weak: false,
                tables: None,
            })
        }
        Method::Topdeg => {
            let k: usize = need_k(p, method)?
                .parse()
                .map_err(|_| mismatch("topdeg needs an even integer --k"))?;
            let c = additive_topdegree(g, k).map_err(heuristic_error)?;
            Ok(strict(c, AffineTolerance::of(int(1), int(k as i128))))
        }
        Method::Highdeg => {
            let k = parse_k(need_k(p, method)?)?;
            let stated = AffineTolerance::of(int(1), k);
            match additive_highdegree(g, &k) {
                Ok(c) => Ok(strict(c, stated)),
                Err(HeuristicError::VerificationFailure {
                    contracted,
                    violation,
                }) => Err(SolveError::Violated {
                    contracted,
                    violation,
                    stated,
                }),
                Err(e) => Err(heuristic_error(e)),
            }
        }
        Method::Mindeg => {
            let d = p.d.ok_or_else(|| mismatch("mindeg needs --d"))?;
            let out = min_degree_clustering(g, d).map_err(heuristic_error)?;
            Ok(strict(out.contracted, AffineTolerance::of(int(5), int(1))))
        }
    }
}
