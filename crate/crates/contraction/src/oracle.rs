//! Exhaustive search over all edge subsets: the reference optimum.

use rayon::prelude::*;
use thiserror::Error;

use crate::feasibility::{CheckError, Checker, Verdict};
use crate::graph::{DisjointSets, EdgeSet, Graph};
use crate::tolerance::Tolerance;

/// Environment variable that overrides [`OracleConfig::default`]'s edge cap.
pub const CAP_ENV: &str = "CONTRACTION_ORACLE_CAP";

/// Most optimal witnesses kept per run.
pub const WITNESS_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Phi,
    Cardinality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_edges: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_edges: 20 }
    }
}

impl OracleConfig {
    /// Default cap, overridden by `CONTRACTION_ORACLE_CAP` when set and valid.
    pub fn from_env() -> OracleConfig {
        let max_edges = std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(OracleConfig::default().max_edges);
        OracleConfig { max_edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {m} edges, above the oracle cap of {cap}")]
    TooManyEdges { m: usize, cap: usize },
    #[error("no edge set is feasible (a weak contraction of a single vertex)")]
    NoFeasibleSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Largest Φ over all feasible sets.
    pub best_phi: usize,
    /// Largest |C| over all feasible sets.
    pub best_size: usize,
    /// Number of sets attaining the optimum of the chosen objective.
    pub optimal_count: u64,
    /// The first [`WITNESS_CAP`] optimal sets in order of their bitmask.
    pub witnesses: Vec<EdgeSet>,
}

#[derive(Debug, Clone)]
struct Partial {
    best_phi: usize,
    best_size: usize,
    best_objective: usize,
    optimal_count: u64,
    witnesses: Vec<u64>,
}

impl Partial {
    fn empty() -> Partial {
        Partial {
            best_phi: 0,
            best_size: 0,
            best_objective: 0,
            optimal_count: 0,
            witnesses: Vec::new(),
        }
    }

    fn offer(&mut self, bits: u64, phi: usize, size: usize, objective: usize) {
        self.best_phi = self.best_phi.max(phi);
        self.best_size = self.best_size.max(size);
        if self.optimal_count == 0 || objective > self.best_objective {
            self.best_objective = objective;
            self.optimal_count = 0;
            self.witnesses.clear();
        }
        if objective == self.best_objective {
            self.optimal_count += 1;
            self.witnesses.push(bits);
        }
    }

    fn trim(&mut self) {
        self.witnesses.sort_unstable();
        self.witnesses.truncate(WITNESS_CAP);
    }

    fn merge(mut self, mut other: Partial) -> Partial {
        if other.optimal_count == 0 {
            return self;
        }
        if self.optimal_count == 0 {
            return other;
        }
        self.best_phi = self.best_phi.max(other.best_phi);
        self.best_size = self.best_size.max(other.best_size);
        if other.best_objective > self.best_objective {
            other.best_phi = self.best_phi;
            other.best_size = self.best_size;
            return other;
        }
        if other.best_objective == self.best_objective {
            self.optimal_count += other.optimal_count;
            self.witnesses.append(&mut other.witnesses);
            self.trim();
        }
        self
    }
}

fn phi_of(g: &Graph, c: &EdgeSet) -> usize {
    let mut ds = DisjointSets::new(g.n());
    for e in c.iter() {
        ds.union(g.edge(e).u, g.edge(e).v);
    }
    let mut pairs = std::collections::HashSet::new();
    for e in g.edges() {
        let (a, b) = (ds.find(e.u), ds.find(e.v));
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    g.m() - pairs.len()
}

pub fn brute_force_optimum(
    g: &Graph,
    t: &dyn Tolerance,
    weak: bool,
    objective: Objective,
) -> Result<OracleResult, OracleError> {
    brute_force_optimum_with(g, t, weak, objective, OracleConfig::default())
}

/// Enumerates all 2^m subsets in Gray-code order, split into chunks that run
/// in parallel. The merged result does not depend on how work was split.
pub fn brute_force_optimum_with(
    g: &Graph,
    t: &dyn Tolerance,
    weak: bool,
    objective: Objective,
    config: OracleConfig,
) -> Result<OracleResult, OracleError> {
    let m = g.m();
    let cap = config.max_edges.min(40);
    if m > cap {
        return Err(OracleError::TooManyEdges { m, cap });
    }
    let checker = Checker::new(g, t);
    let total: u64 = 1 << m;
    let chunk_bits = m.saturating_sub(8);
    let chunks = total >> chunk_bits;

    let result = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut part = Partial::empty();
            let start = chunk << chunk_bits;
            for index in start..start + (1 << chunk_bits) {
                let bits = index ^ (index >> 1);
                let c = EdgeSet::from_bits(m, bits);
                let verdict = if weak {
                    checker.check_weak(&c)
                } else {
                    checker.check(&c)
                };
                match verdict {
                    Ok(Verdict::Feasible) => {}
                    Ok(Verdict::Infeasible(_)) | Err(CheckError::AllContracted) => continue,
                    Err(e) => unreachable!("edge set built for this graph: {e}"),
                }
                let size = c.len();
                let phi = phi_of(g, &c);
                let value = match objective {
                    Objective::Phi => phi,
                    Objective::Cardinality => size,
                };
                part.offer(bits, phi, size, value);
            }
            part.trim();
            part
        })
        .reduce(Partial::empty, Partial::merge);

    if result.optimal_count == 0 {
        return Err(OracleError::NoFeasibleSet);
    }
    Ok(OracleResult {
        best_phi: result.best_phi,
        best_size: result.best_size,
        optimal_count: result.optimal_count,
        witnesses: result
            .witnesses
            .iter()
            .map(|&bits| EdgeSet::from_bits(m, bits))
            .collect(),
    })
}
