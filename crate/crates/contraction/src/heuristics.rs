//! Linear-time contractions for general unit graphs: ball-growing clusters
//! (multiplicative error), high-degree stars (additive error), and
//! min-degree clustering (few super-vertices).

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::Signed;
use thiserror::Error;

use crate::feasibility::{check_contraction, Verdict, Violation};
use crate::graph::{apply_contraction, EdgeSet, Graph};
use crate::rational::{ceil_int, int, Rational};
use crate::tolerance::{AffineTolerance, LogStretch, Tolerance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeuristicError {
    #[error("graph must have unit edge lengths")]
    NotUnit,
    #[error("graph must be connected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {vertex} has degree {degree}, below the required {required}")]
    DegreeTooSmall {
        vertex: usize,
        degree: usize,
        required: usize,
    },
    #[error("the high-degree edge set is not a (1, k)-contraction: {violation}")]
    VerificationFailure {
        contracted: EdgeSet,
        violation: Box<Violation>,
    },
}

fn require_unit_connected(g: &Graph) -> Result<(), HeuristicError> {
    if !g.has_unit_lengths() {
        return Err(HeuristicError::NotUnit);
    }
    if !g.is_connected() {
        return Err(HeuristicError::Disconnected);
    }
    Ok(())
}

/// The cluster radius parameter r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionRadius {
    /// A rational r ≥ 1.
    Exact(Rational),
    /// r = log₂ n, where the growth factor n^{1/r} is exactly 2.
    LogN,
}

impl PartitionRadius {
    /// Whether a new layer of `layer` vertices is at least n^{1/r} times the
    /// `total` already in the cluster, decided with integer powers.
    fn expands(&self, n: usize, layer: usize, total: usize) -> bool {
        match self {
            PartitionRadius::LogN => layer >= 2 * total,
            PartitionRadius::Exact(r) => {
                // (layer/total)^p ≥ n^q for r = p/q.
                let p = u32::try_from(*r.numer()).expect("radius numerator fits u32");
                let q = u32::try_from(*r.denom()).expect("radius denominator fits u32");
                BigUint::from(layer).pow(p) >= BigUint::from(n).pow(q) * BigUint::from(total).pow(p)
            }
        }
    }

    /// Largest radius a cluster can reach: ⌈r⌉ − 1.
    pub fn radius_bound(&self, n: usize) -> usize {
        match self {
            PartitionRadius::Exact(r) => (ceil_int(r) - 1) as usize,
            PartitionRadius::LogN => {
                // ⌈log₂ n⌉ − 1
                (usize::BITS - (n.max(1) - 1).leading_zeros()).saturating_sub(1) as usize
            }
        }
    }

    /// Whether `density` ≤ n^{1+1/r}.
    pub fn density_ok(&self, n: usize, density: usize) -> bool {
        match self {
            PartitionRadius::LogN => density <= 2 * n,
            PartitionRadius::Exact(r) => {
                let p = u32::try_from(*r.numer()).unwrap();
                let q = u32::try_from(*r.denom()).unwrap();
                BigUint::from(density).pow(p) <= BigUint::from(n).pow(p + q)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub center: usize,
    /// Members in BFS order, centre first.
    pub members: Vec<usize>,
    /// Depth of the last accepted layer.
    pub radius: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPartition {
    pub clusters: Vec<Cluster>,
    pub cluster_of: Vec<usize>,
    /// Number of cluster pairs joined by at least one edge.
    pub density: usize,
}

fn density(g: &Graph, cluster_of: &[usize]) -> usize {
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (cluster_of[e.u], cluster_of[e.v]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs.len()
}

fn intra_cluster_edges(g: &Graph, cluster_of: &[usize]) -> EdgeSet {
    EdgeSet::from_mask(
        g.edges()
            .iter()
            .map(|e| cluster_of[e.u] == cluster_of[e.v])
            .collect(),
    )
}

/// Grows clusters from the lowest remaining vertex, adding BFS layers of the
/// remaining graph while each new layer has at least n^{1/r} times as many
/// vertices as the cluster so far.
pub fn r_partition(g: &Graph, radius: &PartitionRadius) -> Result<RPartition, HeuristicError> {
    require_unit_connected(g)?;
    if let PartitionRadius::Exact(r) = radius {
        if *r < int(1) {
            return Err(HeuristicError::InvalidParameter(format!(
                "r = {r} is below 1"
            )));
        }
    }
    let n = g.n();
    let mut cluster_of = vec![usize::MAX; n];
    let mut clusters = Vec::new();
    let mut seen = vec![usize::MAX; n];
    for center in 0..n {
        if cluster_of[center] != usize::MAX {
            continue;
        }
        let id = clusters.len();
        let mut members = vec![center];
        cluster_of[center] = id;
        seen[center] = id;
        let mut frontier = vec![center];
        let mut depth = 0;
        loop {
            let mut layer = Vec::new();
            for &x in &frontier {
                for &(y, _) in g.neighbors(x) {
                    if cluster_of[y] == usize::MAX && seen[y] != id {
                        seen[y] = id;
                        layer.push(y);
                    }
                }
            }
            if layer.is_empty() || !radius.expands(n, layer.len(), members.len()) {
                break;
            }
            for &y in &layer {
                cluster_of[y] = id;
            }
            members.extend_from_slice(&layer);
            frontier = layer;
            depth += 1;
        }
        clusters.push(Cluster {
            center,
            members,
            radius: depth,
        });
    }
    let density = density(g, &cluster_of);
    Ok(RPartition {
        clusters,
        cluster_of,
        density,
    })
}

/// Intra-cluster edges of a k-partition: a (2k − 1, 1)-contraction whose
/// quotient has at most n^{1+1/k} edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeOutcome {
    pub partition: RPartition,
    pub contracted: EdgeSet,
}

impl MultiplicativeOutcome {
    /// The tolerance the set is guaranteed to satisfy.
    pub fn tolerance(&self, k: &PartitionRadius, n: usize) -> Box<dyn Tolerance> {
        match k {
            PartitionRadius::Exact(k) => Box::new(AffineTolerance::of(k * int(2) - int(1), int(1))),
            PartitionRadius::LogN => Box::new(LogStretch::new(n.max(2) as u64).expect("n >= 2")),
        }
    }
}

pub fn multiplicative_contraction(
    g: &Graph,
    k: &PartitionRadius,
) -> Result<MultiplicativeOutcome, HeuristicError> {
    let partition = r_partition(g, k)?;
    let contracted = intra_cluster_edges(g, &partition.cluster_of);
    Ok(MultiplicativeOutcome {
        partition,
        contracted,
    })
}

/// The k/2 highest-degree vertices (ties to the lower id).
fn top_degree_vertices(g: &Graph, count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order.truncate(count);
    order
}

/// All edges at the k/2 highest-degree vertices: a (1, k)-contraction with
/// Φ ≥ km/(2n).
pub fn additive_topdegree(g: &Graph, k: usize) -> Result<EdgeSet, HeuristicError> {
    if !g.has_unit_lengths() {
        return Err(HeuristicError::NotUnit);
    }
    if !k.is_multiple_of(2) || k > g.n() {
        return Err(HeuristicError::InvalidParameter(format!(
            "k = {k} must be even and at most n = {}",
            g.n()
        )));
    }
    let mut mask = vec![false; g.m()];
    for v in top_degree_vertices(g, k / 2) {
        for &(_, e) in g.neighbors(v) {
            mask[e] = true;
        }
    }
    Ok(EdgeSet::from_mask(mask))
}

/// Edges whose both ends have degree at least n/k, checked against (1, k)
/// before being returned.
pub fn additive_highdegree(g: &Graph, k: &Rational) -> Result<EdgeSet, HeuristicError> {
    if !g.has_unit_lengths() {
        return Err(HeuristicError::NotUnit);
    }
    let n = int(g.n() as i128);
    if !k.is_positive() || *k > n {
        return Err(HeuristicError::InvalidParameter(format!(
            "k = {k} must lie in (0, n]"
        )));
    }
    let high: Vec<bool> = (0..g.n())
        .map(|v| int(g.degree(v) as i128) * k >= n)
        .collect();
    let contracted = EdgeSet::from_mask(g.edges().iter().map(|e| high[e.u] && high[e.v]).collect());
    let tolerance = AffineTolerance::of(int(1), *k);
    match check_contraction(g, &tolerance, &contracted).expect("set built for g") {
        Verdict::Feasible => Ok(contracted),
        Verdict::Infeasible(violation) => Err(HeuristicError::VerificationFailure {
            contracted,
            violation: Box::new(violation),
        }),
    }
}

/// Stars around vertices of remaining degree ≥ D, the rest attached to a
/// neighbouring star: a (5, 1)-contraction leaving at most n/D super-vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinDegreeOutcome {
    /// Centre first, then the star, then attached leftovers.
    pub clusters: Vec<Vec<usize>>,
    pub contracted: EdgeSet,
}

pub fn min_degree_clustering(g: &Graph, d: usize) -> Result<MinDegreeOutcome, HeuristicError> {
    require_unit_connected(g)?;
    if d == 0 {
        return Err(HeuristicError::InvalidParameter(
            "D must be at least 1".into(),
        ));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < d) {
        return Err(HeuristicError::DegreeTooSmall {
            vertex: v,
            degree: g.degree(v),
            required: d,
        });
    }
    let n = g.n();
    let mut cluster_of = vec![usize::MAX; n];
    let mut residual: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    // Residual degrees only fall, so one ascending sweep finds every centre
    // in lowest-id-first order.
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(c) = queue.pop_front() {
        if cluster_of[c] != usize::MAX || residual[c] < d {
            continue;
        }
        let id = clusters.len();
        let mut members = vec![c];
        members.extend(
            g.neighbors(c)
                .iter()
                .map(|&(w, _)| w)
                .filter(|&w| cluster_of[w] == usize::MAX),
        );
        for &x in &members {
            cluster_of[x] = id;
        }
        for &x in &members {
            for &(y, _) in g.neighbors(x) {
                residual[y] -= 1;
            }
        }
        clusters.push(members);
    }
    for v in 0..n {
        if cluster_of[v] != usize::MAX {
            continue;
        }
        let target = g
            .neighbors(v)
            .iter()
            .map(|&(w, _)| cluster_of[w])
            .filter(|&c| c != usize::MAX && !clusters[c].is_empty())
            .min()
            .expect("a leftover lost residual degree to some cluster");
        clusters[target].push(v);
    }
    for (id, members) in clusters.iter().enumerate() {
        for &x in members {
            cluster_of[x] = id;
        }
    }
    let contracted = intra_cluster_edges(g, &cluster_of);
    Ok(MinDegreeOutcome {
        clusters,
        contracted,
    })
}

/// m(G/C) and n(G/C).
pub fn quotient_size(g: &Graph, c: &EdgeSet) -> (usize, usize) {
    let q = apply_contraction(g, c).quotient;
    (q.m(), q.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{cycle, path, star};
    use crate::rational::ratio;

    #[test]
    fn radius_one_gives_singletons() {
        let g = cycle(7).unwrap();
        let p = r_partition(&g, &PartitionRadius::Exact(int(1))).unwrap();
        assert_eq!(p.clusters.len(), 7);
        assert_eq!(p.density, 7);
        let out = multiplicative_contraction(&g, &PartitionRadius::Exact(int(1))).unwrap();
        assert!(out.contracted.is_empty());
    }

    #[test]
    fn large_radius_gives_one_cluster() {
        let g = star(6).unwrap();
        let p = r_partition(&g, &PartitionRadius::Exact(int(3))).unwrap();
        // Layer of 5 leaves against 1 centre: 5³ ≥ 6 · 1.
        assert_eq!(p.clusters.len(), 1);
        assert_eq!(p.density, 0);
    }

    #[test]
    fn expansion_with_fractional_radius() {
        // r = 3/2: need layer^3 ≥ n^2 · total^3.
        let r = PartitionRadius::Exact(ratio(3, 2));
        assert!(r.expands(4, 3, 1));
        assert!(!r.expands(10, 4, 1));
        assert_eq!(r.radius_bound(10), 1);
        assert_eq!(PartitionRadius::LogN.radius_bound(8), 2);
        assert_eq!(PartitionRadius::LogN.radius_bound(9), 3);
    }

    #[test]
    fn topdegree_examples() {
        let p = path(6).unwrap();
        assert!(additive_topdegree(&p, 0).unwrap().is_empty());
        assert_eq!(additive_topdegree(&p, 2).unwrap().ids(), &[0, 1]);
        let s = star(7).unwrap();
        assert_eq!(additive_topdegree(&s, 2).unwrap().len(), 6);
        assert!(additive_topdegree(&s, 3).is_err());
    }

    #[test]
    fn highdegree_examples() {
        let pairs: Vec<_> = (0..5)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        let k5 = Graph::unit(5, &pairs).unwrap();
        let c = additive_highdegree(&k5, &int(5)).unwrap();
        assert_eq!(c.len(), 10);
        assert_eq!(quotient_size(&k5, &c), (0, 1));
        let p = path(8).unwrap();
        assert!(additive_highdegree(&p, &int(2)).unwrap().is_empty());
    }

    #[test]
    fn highdeg_can_fail_verification() {
        let pairs = [
            (0, 1),
            (0, 3),
            (0, 8),
            (1, 3),
            (1, 8),
            (2, 4),
            (2, 5),
            (2, 7),
            (2, 8),
            (3, 6),
            (4, 5),
            (4, 7),
            (7, 8),
        ];
        let g = Graph::unit(9, &pairs).unwrap();
        match additive_highdegree(&g, &int(3)) {
            Err(HeuristicError::VerificationFailure {
                violation,
                contracted,
            }) => {
                assert_eq!((violation.u, violation.v), (3, 4));
                assert_eq!(violation.original, int(4));
                assert_eq!(violation.contracted, int(0));
                assert!(!contracted.is_empty());
            }
            other => panic!("expected a verification failure, got {other:?}"),
        }
    }

    #[test]
    fn min_degree_examples() {
        let pairs: Vec<_> = (0..5)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        let k5 = Graph::unit(5, &pairs).unwrap();
        let out = min_degree_clustering(&k5, 4).unwrap();
        assert_eq!(out.clusters.len(), 1);
        let p = path(5).unwrap();
        assert!(matches!(
            min_degree_clustering(&p, 2),
            Err(HeuristicError::DegreeTooSmall { vertex: 0, .. })
        ));
        let out = min_degree_clustering(&p, 1).unwrap();
        assert!(out.clusters.len() <= 5);
    }
}
