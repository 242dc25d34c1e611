#![allow(dead_code)]

use contraction::rational::{int, Rational};
use contraction::Graph;

/// All graphs on `n` vertices up to isomorphism, as sorted edge lists.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let canon = perms
            .iter()
            .map(|p| {
                let mut img: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                img.sort_unstable();
                img
            })
            .min()
            .unwrap();
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn adjacency(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for e in g.edges() {
        adj[e.u] |= 1 << e.v;
        adj[e.v] |= 1 << e.u;
    }
    adj
}

/// Largest vertex set in which every pair is adjacent (`want_edges`) or
/// every pair is non-adjacent.
fn largest_uniform_set(g: &Graph, want_edges: bool) -> usize {
    let adj = adjacency(g);
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| {
            (0..n).filter(|&v| s >> v & 1 == 1).all(|v| {
                let others = s & !(1 << v);
                if want_edges {
                    adj[v] & others == others
                } else {
                    adj[v] & others == 0
                }
            })
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn clique_number(g: &Graph) -> usize {
    largest_uniform_set(g, true)
}

pub fn independence_number(g: &Graph) -> usize {
    largest_uniform_set(g, false)
}

/// Whether some subset sums to exactly half the total.
pub fn has_equal_partition(values: &[Rational]) -> bool {
    let total: Rational = values.iter().sum();
    (0u32..1 << values.len()).any(|s| {
        let part: Rational = values
            .iter()
            .enumerate()
            .filter(|(i, _)| s >> i & 1 == 1)
            .map(|(_, x)| *x)
            .sum();
        part * int(2) == total
    })
}
