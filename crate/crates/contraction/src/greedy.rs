//! Linear-time exact algorithms for unit paths, unit cycles, and unit trees
//! with additive error.
//!
//! Path and cycle routines depend only on n, so they take n and return edge
//! indices: edge i of a path joins vertices i and i+1, and edge i of a cycle
//! joins i and (i+1) mod n. Comments write e₁, e₂, … for 1-based positions,
//! so index i is e_{i+1}.

use thiserror::Error;

use crate::graph::{EdgeSet, Graph};
use crate::rational::{floor_int, int, Rational};
use crate::tolerance::AffineTolerance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreedyError {
    #[error("path greedy needs beta >= 1, got {0}; use the tree DP instead")]
    BetaBelowOne(Rational),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("input is not a tree")]
    NotATree,
    #[error("input has non-unit edge lengths")]
    NotUnit,
}

/// Scans e₁, e₂, … and keeps e_i whenever |C| + 1 ≤ (1 − 1/α)·i + β.
pub fn greedy_path(n: usize, t: &AffineTolerance) -> Result<Vec<usize>, GreedyError> {
    if *t.beta() < int(1) {
        return Err(GreedyError::BetaBelowOne(*t.beta()));
    }
    let rate = t.slack_rate();
    let mut chosen = Vec::new();
    for i in 1..n {
        let budget = rate * int(i as i128) + t.beta();
        if int(chosen.len() as i128 + 1) <= budget {
            chosen.push(i - 1);
        }
    }
    Ok(chosen)
}

/// λ' = min over d of ⌊d − min{d, n−d}/α + β⌋ / d, and λ = min{1, λ'}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleLambda {
    pub lambda_prime: Rational,
    pub lambda: Rational,
    /// Smallest d attaining λ'.
    pub argmin_d: usize,
}

/// The most a budget-respecting window of length d may contract on a unit
/// n-cycle: ⌊d − min{d, n−d}/α + β⌋.
pub fn cycle_window_budget(n: usize, d: usize, t: &AffineTolerance) -> i128 {
    let short = int(d.min(n - d) as i128);
    floor_int(&(int(d as i128) - short / t.alpha() + t.beta()))
}

pub fn cycle_lambda(n: usize, t: &AffineTolerance) -> Result<CycleLambda, GreedyError> {
    if n < 3 {
        return Err(GreedyError::CycleTooShort(n));
    }
    let mut best: Option<(Rational, usize)> = None;
    for d in 1..n {
        let value = Rational::new(cycle_window_budget(n, d, t), d as i128);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, d));
        }
    }
    let (lambda_prime, argmin_d) = best.expect("n >= 3");
    Ok(CycleLambda {
        lambda: lambda_prime.min(int(1)),
        lambda_prime,
        argmin_d,
    })
}

/// Keeps e_i exactly when ⌊λi⌋ − ⌊λ(i−1)⌋ = 1, spreading ⌊λn⌋ contractions evenly.
pub fn greedy_cycle(n: usize, t: &AffineTolerance) -> Result<Vec<usize>, GreedyError> {
    let lambda = cycle_lambda(n, t)?.lambda;
    Ok((1..=n)
        .filter(|&i| {
            floor_int(&(lambda * int(i as i128))) - floor_int(&(lambda * int(i as i128 - 1))) == 1
        })
        .map(|i| i - 1)
        .collect())
}

/// L(T, d): edges removed by d rounds of deleting every current leaf.
pub fn leaf_layers(tree: &Graph, d: usize) -> Result<EdgeSet, GreedyError> {
    if !tree.is_tree() {
        return Err(GreedyError::NotATree);
    }
    let mut degree: Vec<usize> = (0..tree.n()).map(|v| tree.degree(v)).collect();
    let mut alive = vec![true; tree.n()];
    let mut taken = vec![false; tree.m()];
    for _ in 0..d {
        let leaves: Vec<usize> = (0..tree.n())
            .filter(|&v| alive[v] && degree[v] == 1)
            .collect();
        if leaves.is_empty() {
            break;
        }
        for &v in &leaves {
            for &(w, e) in tree.neighbors(v) {
                if !taken[e] && alive[w] {
                    taken[e] = true;
                    degree[w] -= 1;
                }
            }
        }
        for &v in &leaves {
            alive[v] = false;
            degree[v] = 0;
        }
    }
    Ok(EdgeSet::from_mask(taken))
}

/// Optimal (1, β) contraction of a unit tree: L(T, ⌊β/2⌋), plus the
/// smallest-id remaining edge when β is odd.
pub fn unit_tree_additive(tree: &Graph, beta: u64) -> Result<EdgeSet, GreedyError> {
    if !tree.has_unit_lengths() {
        return Err(GreedyError::NotUnit);
    }
    let layers = leaf_layers(tree, (beta / 2) as usize)?;
    if beta.is_multiple_of(2) {
        return Ok(layers);
    }
    let mut mask = layers.mask().to_vec();
    if let Some(extra) = mask.iter().position(|&b| !b) {
        mask[extra] = true;
    }
    Ok(EdgeSet::from_mask(mask))
}

/// The path condition: every window e_i..e_j holds at most (1−1/α)(j−i+1) + β
/// chosen edges. Quadratic; meant for tests and self-checks.
pub fn path_windows_ok(n: usize, chosen: &[usize], t: &AffineTolerance) -> bool {
    let edges = n.saturating_sub(1);
    let mut marked = vec![false; edges];
    for &i in chosen {
        marked[i] = true;
    }
    let rate = t.slack_rate();
    (0..edges).all(|i| {
        let mut count = 0;
        (i..edges).all(|j| {
            count += usize::from(marked[j]);
            int(count as i128) <= rate * int((j - i + 1) as i128) + t.beta()
        })
    })
}

/// The cycle condition: every window of d consecutive edges (cyclically)
/// holds at most ⌊d − min{d, n−d}/α + β⌋ chosen edges, for 1 ≤ d ≤ n−1.
pub fn cycle_windows_ok(n: usize, chosen: &[usize], t: &AffineTolerance) -> bool {
    let mut marked = vec![false; n];
    for &i in chosen {
        marked[i] = true;
    }
    (1..n).all(|d| {
        let budget = cycle_window_budget(n, d, t);
        (0..n).all(|start| {
            let count = (0..d).filter(|k| marked[(start + k) % n]).count() as i128;
            count <= budget
        })
    })
}

/// ⌊(1 − 1/α)(n − 1) + β⌋, the optimal path size.
pub fn path_optimum(n: usize, t: &AffineTolerance) -> i128 {
    floor_int(&(t.slack_rate() * int(n.saturating_sub(1) as i128) + t.beta()))
}
