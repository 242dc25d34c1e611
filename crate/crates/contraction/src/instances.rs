//! Instance generators: standard families, the reduction constructions, and
//! random graphs for cross-validation. All are deterministic in their seed.

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::rational::{int, ratio, Rational};
use crate::tolerance::AffineTolerance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no connected sample after {0} attempts")]
    NotConnected(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn invalid(msg: impl Into<String>) -> InstanceError {
    InstanceError::InvalidParameter(msg.into())
}

const CONNECT_ATTEMPTS: usize = 10_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generated graph paired with the tolerance its reduction is stated for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub graph: Graph,
    pub tolerance: AffineTolerance,
    pub weak: bool,
}

/// Edge lengths for random trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lengths {
    Unit,
    /// `num/den` with num in 1..=12 and den in 1..=4.
    RandomRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasicFamily {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        n: usize,
    },
    RandomTree {
        n: usize,
        lengths: Lengths,
    },
    /// G(n, p), resampled until connected.
    Gnp {
        n: usize,
        p: Rational,
    },
}

pub fn gen_basic(family: &BasicFamily, seed: u64) -> Result<Graph, InstanceError> {
    match family {
        BasicFamily::Path { n } => path(*n),
        BasicFamily::Cycle { n } => cycle(*n),
        BasicFamily::Star { n } => star(*n),
        BasicFamily::RandomTree { n, lengths } => random_tree(*n, *lengths, &mut rng(seed)),
        BasicFamily::Gnp { n, p } => gnp(*n, p, &mut rng(seed)),
    }
}

/// Unit path; edge i joins i and i+1.
pub fn path(n: usize) -> Result<Graph, InstanceError> {
    if n == 0 {
        return Err(invalid("path needs n >= 1"));
    }
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::unit(n, &pairs)?)
}

/// Unit cycle; edge i joins i and (i+1) mod n.
pub fn cycle(n: usize) -> Result<Graph, InstanceError> {
    if n < 3 {
        return Err(invalid("cycle needs n >= 3"));
    }
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::unit(n, &pairs)?)
}

/// Unit star K_{1,n−1} with centre 0.
pub fn star(n: usize) -> Result<Graph, InstanceError> {
    if n == 0 {
        return Err(invalid("star needs n >= 1"));
    }
    let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Ok(Graph::unit(n, &pairs)?)
}

fn random_length(lengths: Lengths, rng: &mut impl Rng) -> Rational {
    match lengths {
        Lengths::Unit => int(1),
        Lengths::RandomRational => ratio(rng.gen_range(1..=12), rng.gen_range(1..=4)),
    }
}

/// Random recursive tree under a random relabelling.
pub fn random_tree(n: usize, lengths: Lengths, rng: &mut impl Rng) -> Result<Graph, InstanceError> {
    if n == 0 {
        return Err(invalid("tree needs n >= 1"));
    }
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges = (1..n)
        .map(|v| {
            let p = rng.gen_range(0..v);
            (label[p], label[v], random_length(lengths, rng))
        })
        .collect();
    Ok(Graph::new(n, edges)?)
}

fn coin(p: &Rational, rng: &mut impl Rng) -> bool {
    rng.gen_range(0..*p.denom()) < *p.numer()
}

/// Unit G(n, p), possibly disconnected.
pub fn gnp_any(n: usize, p: &Rational, rng: &mut impl Rng) -> Result<Graph, InstanceError> {
    if p.is_negative() || *p > int(1) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if coin(p, rng) {
                pairs.push((u, v));
            }
        }
    }
    Ok(Graph::unit(n, &pairs)?)
}

/// Unit G(n, p), resampled until connected.
pub fn gnp(n: usize, p: &Rational, rng: &mut impl Rng) -> Result<Graph, InstanceError> {
    if n == 0 || p.is_negative() || *p > int(1) {
        return Err(invalid("gnp needs n >= 1 and 0 <= p <= 1"));
    }
    for _ in 0..CONNECT_ATTEMPTS {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if coin(p, rng) {
                    pairs.push((u, v));
                }
            }
        }
        let g = Graph::unit(n, &pairs)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(InstanceError::NotConnected(CONNECT_ATTEMPTS))
}

/// Connected unit graph with a random side for each vertex and edges only
/// across sides, each present with probability p.
pub fn random_bipartite(
    n: usize,
    p: &Rational,
    rng: &mut impl Rng,
) -> Result<Graph, InstanceError> {
    if n < 2 {
        return Err(invalid("bipartite graph needs n >= 2"));
    }
    for _ in 0..CONNECT_ATTEMPTS {
        let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && coin(p, rng) {
                    pairs.push((u, v));
                }
            }
        }
        let g = Graph::unit(n, &pairs)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(InstanceError::NotConnected(CONNECT_ATTEMPTS))
}

/// A random unit tree plus one edge closing a cycle of length at least 6
/// (when the tree has two vertices that far apart). Girth is at least 6.
pub fn random_girth6(n: usize, rng: &mut impl Rng) -> Result<Graph, InstanceError> {
    let tree = random_tree(n, Lengths::Unit, rng)?;
    let dist = crate::graph::shortest_distances(&tree, &crate::graph::EdgeSet::empty(tree.m()));
    let far: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| dist.get(u, v) >= int(5))
        .collect();
    let mut pairs: Vec<(usize, usize)> = tree.edges().iter().map(|e| (e.u, e.v)).collect();
    if let Some(&extra) = far.choose(rng) {
        pairs.push(extra);
    }
    Ok(Graph::unit(n, &pairs)?)
}

/// n/D layers of D vertices, consecutive layers completely joined.
pub fn gen_layered(n: usize, d: usize) -> Result<Graph, InstanceError> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(invalid(format!("layer size {d} must divide n = {n}")));
    }
    if n / d < 2 {
        return Err(invalid("a single layer is edgeless and disconnected"));
    }
    let mut pairs = Vec::new();
    for layer in 1..n / d {
        for a in 0..d {
            for b in 0..d {
                pairs.push(((layer - 1) * d + a, layer * d + b));
            }
        }
    }
    Ok(Graph::unit(n, &pairs)?)
}

/// Positive rationals a₁ ≥ … ≥ a_n with sum n and ε = Σ|a_i − 1| < 1/5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloseToOnePartitionInstance {
    values: Vec<Rational>,
    epsilon: Rational,
}

impl CloseToOnePartitionInstance {
    /// Sorts the values in decreasing order.
    pub fn new(mut values: Vec<Rational>) -> Result<CloseToOnePartitionInstance, InstanceError> {
        if values.is_empty() {
            return Err(invalid("need at least one value"));
        }
        if values.iter().any(|a| !a.is_positive()) {
            return Err(invalid("values must be positive"));
        }
        let n = int(values.len() as i128);
        let sum = values.iter().fold(Rational::zero(), |acc, a| acc + a);
        if sum != n {
            return Err(invalid(format!("values sum to {sum}, expected {n}")));
        }
        let epsilon = values
            .iter()
            .fold(Rational::zero(), |acc, a| acc + (a - int(1)).abs());
        if epsilon >= ratio(1, 5) {
            return Err(invalid(format!("epsilon {epsilon} is not below 1/5")));
        }
        values.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CloseToOnePartitionInstance { values, epsilon })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn epsilon(&self) -> Rational {
        self.epsilon
    }

    /// β = n/2 + 2ε.
    pub fn beta(&self) -> Rational {
        ratio(self.values.len() as i128, 2) + self.epsilon * int(2)
    }

    /// β' = β + 1.
    pub fn beta_prime(&self) -> Rational {
        self.beta() + int(1)
    }
}

/// The all-ones vector shifted by a few ± pairs (each pair sums to zero),
/// each shift a multiple of 1/100, with ε kept positive and below 1/5.
pub fn random_close_to_one(
    n: usize,
    rng: &mut impl Rng,
) -> Result<CloseToOnePartitionInstance, InstanceError> {
    if n < 2 {
        return Err(invalid("need n >= 2 to perturb in pairs"));
    }
    loop {
        let mut values = vec![int(1); n];
        let pairs = rng.gen_range(1..=n / 2);
        let mut budget = 9;
        for _ in 0..pairs {
            if budget == 0 {
                break;
            }
            let shift = rng.gen_range(1..=budget);
            budget -= shift;
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            values[i] += ratio(shift, 100);
            values[j] -= ratio(shift, 100);
        }
        let inst = CloseToOnePartitionInstance::new(values)?;
        if inst.epsilon.is_positive() {
            return Ok(inst);
        }
    }
}

/// The (2n+4)-cycle u₀…u_n v₁ v₂ w₀…w_n with tolerance (1, β).
///
/// Vertex ids: u_i = i, v₁ = n+1, v₂ = n+2, w_i = n+3+i. Edge lengths:
/// a_i on u_{i−1}u_i, ε on u_n v₁ and v₂ w₀, β' on v₁ v₂, 2 − a_i on
/// w_{i−1}w_i, and β' + 2ε on w_n u₀.
pub fn gen_partition_cycle(
    inst: &CloseToOnePartitionInstance,
) -> Result<ReductionInstance, InstanceError> {
    let a = inst.values();
    let n = a.len();
    let eps = inst.epsilon();
    if eps.is_zero() {
        return Err(invalid("epsilon = 0 would create zero-length edges"));
    }
    if a.iter().any(|x| *x >= int(2)) {
        return Err(invalid("every value must be below 2"));
    }
    let (beta, beta_prime) = (inst.beta(), inst.beta_prime());
    let u = |i: usize| i;
    let (v1, v2) = (n + 1, n + 2);
    let w = |i: usize| n + 3 + i;
    let mut edges = Vec::with_capacity(2 * n + 4);
    for i in 1..=n {
        edges.push((u(i - 1), u(i), a[i - 1]));
    }
    edges.push((u(n), v1, eps));
    edges.push((v1, v2, beta_prime));
    edges.push((v2, w(0), eps));
    for i in 1..=n {
        edges.push((w(i - 1), w(i), int(2) - a[i - 1]));
    }
    edges.push((w(n), u(0), beta_prime + eps * int(2)));
    Ok(ReductionInstance {
        graph: Graph::new(2 * n + 4, edges)?,
        tolerance: AffineTolerance::of(int(1), beta),
        weak: false,
    })
}

/// H on V × {1,2} ∪ {s}: (v,1) = v, (v,2) = n + v, s = 2n. Original edges get
/// length 2β+2, the matching (v,1)(v,2) length β, and spokes s(v,2) length β+1.
pub fn gen_clique_lollipop(g: &Graph, beta: &Rational) -> Result<ReductionInstance, InstanceError> {
    if !beta.is_positive() {
        return Err(invalid("beta must be positive"));
    }
    let n = g.n();
    let mut edges: Vec<(usize, usize, Rational)> = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, beta * int(2) + int(2)))
        .collect();
    edges.extend((0..n).map(|v| (v, n + v, *beta)));
    edges.extend((0..n).map(|v| (2 * n, n + v, beta + int(1))));
    Ok(ReductionInstance {
        graph: Graph::new(2 * n + 1, edges)?,
        tolerance: AffineTolerance::of(int(1), *beta),
        weak: false,
    })
}

/// Unit bipartite H: (v,1) = v, (v,2) = n + v, s = 2n, x_e = 2n + 1 + e.
/// Edges f_v = (v,1)(v,2), f_{e,u} = x_e(u,1) for both ends u of e, and s
/// joined to every (v,2) and every x_e. Contract the f_v for the tolerance (1,1).
pub fn gen_bipartite_lollipop(g: &Graph) -> Result<ReductionInstance, InstanceError> {
    let n = g.n();
    let s = 2 * n;
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|v| (v, n + v)).collect();
    for (id, e) in g.edges().iter().enumerate() {
        let x = 2 * n + 1 + id;
        pairs.push((x, e.u));
        pairs.push((x, e.v));
    }
    pairs.extend((0..n).map(|v| (s, n + v)));
    pairs.extend((0..g.m()).map(|id| (s, 2 * n + 1 + id)));
    Ok(ReductionInstance {
        graph: Graph::unit(2 * n + 1 + g.m(), &pairs)?,
        tolerance: AffineTolerance::of(int(1), int(1)),
        weak: false,
    })
}

/// Copy of G at length 2, plus pendants (v,1) = n + v at length 1 and
/// (v,2) = 2n + v at length 2, under the weak tolerance (3/2, 0).
/// Edge ids: the copy of G first, then the length-1 pendants, then the length-2 ones.
pub fn gen_indset_reduction(g: &Graph) -> Result<ReductionInstance, InstanceError> {
    if !g.is_connected() {
        return Err(invalid("graph must be connected"));
    }
    let n = g.n();
    let mut edges: Vec<(usize, usize, Rational)> =
        g.edges().iter().map(|e| (e.u, e.v, int(2))).collect();
    edges.extend((0..n).map(|v| (v, n + v, int(1))));
    edges.extend((0..n).map(|v| (v, 2 * n + v, int(2))));
    Ok(ReductionInstance {
        graph: Graph::new(3 * n, edges)?,
        tolerance: AffineTolerance::of(ratio(3, 2), int(0)),
        weak: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_families() {
        assert_eq!(path(4).unwrap().m(), 3);
        assert_eq!(cycle(3).unwrap().m(), 3);
        let g = gen_basic(
            &BasicFamily::Gnp {
                n: 10,
                p: ratio(1, 2),
            },
            7,
        )
        .unwrap();
        assert!(g.is_connected());
        assert_eq!(
            g,
            gen_basic(
                &BasicFamily::Gnp {
                    n: 10,
                    p: ratio(1, 2)
                },
                7
            )
            .unwrap()
        );
        let t = gen_basic(
            &BasicFamily::RandomTree {
                n: 9,
                lengths: Lengths::RandomRational,
            },
            3,
        )
        .unwrap();
        assert!(t.is_tree());
    }

    #[test]
    fn layered_graphs() {
        assert_eq!(gen_layered(4, 2).unwrap().m(), 4);
        assert_eq!(gen_layered(6, 2).unwrap().m(), 8);
        assert!(gen_layered(3, 3).is_err());
        assert!(gen_layered(5, 2).is_err());
    }

    #[test]
    fn partition_instance_parameters() {
        let values = [ratio(21, 20), ratio(19, 20), int(1), int(1), int(1), int(1)];
        let inst = CloseToOnePartitionInstance::new(values.to_vec()).unwrap();
        assert_eq!(inst.epsilon(), ratio(1, 10));
        assert_eq!(inst.beta(), ratio(16, 5));
        assert_eq!(inst.beta_prime(), ratio(21, 5));
        let red = gen_partition_cycle(&inst).unwrap();
        assert_eq!((red.graph.n(), red.graph.m()), (16, 16));
        assert!(red.graph.is_connected());
        let bad = [ratio(3, 2), ratio(1, 2), int(1), int(1), int(1), int(1)];
        assert!(CloseToOnePartitionInstance::new(bad.to_vec()).is_err());
        let flat = CloseToOnePartitionInstance::new(vec![int(1); 4]).unwrap();
        assert!(gen_partition_cycle(&flat).is_err());
    }

    #[test]
    fn partition_values_are_sorted() {
        let inst =
            CloseToOnePartitionInstance::new(vec![ratio(19, 20), int(1), ratio(21, 20), int(1)])
                .unwrap();
        assert_eq!(inst.values()[0], ratio(21, 20));
        assert_eq!(inst.values()[3], ratio(19, 20));
    }

    #[test]
    fn reduction_shapes() {
        let k3 = cycle(3).unwrap();
        let h = gen_clique_lollipop(&k3, &int(1)).unwrap();
        assert_eq!((h.graph.n(), h.graph.m()), (7, 9));
        let h = gen_bipartite_lollipop(&k3).unwrap();
        assert!(h.graph.bipartition().is_some());
        assert!(h.graph.girth().unwrap() >= 4);
        let h = gen_indset_reduction(&path(2).unwrap()).unwrap();
        assert_eq!(h.graph.m(), 5);
        assert!(h.weak);
    }

    #[test]
    fn random_girth_six() {
        let mut r = rng(5);
        for _ in 0..20 {
            let g = random_girth6(10, &mut r).unwrap();
            assert!(g.is_connected());
            assert!(g.girth().is_none_or(|len| len >= 6));
        }
    }
}
