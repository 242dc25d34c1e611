//! The cubic program for strict contractions on trees.
//!
//! `L(v,i,s)` is the least load at v over feasible size-s sets of `T_{v,i}`,
//! and `L⁺(v,i,s)` the same for `T⁺_{v,i}`; +∞ when no such set exists.

use std::fmt::Write;

use num_traits::Zero;

use super::{RootedOrderedTree, TreeError, TreeSolution};
use crate::graph::{EdgeSet, Graph};
use crate::rational::{Ext, Rational};
use crate::tolerance::AffineTolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeChoice {
    Omit,
    Add,
}

/// Filled tables with the choices needed to rebuild an optimal set.
#[derive(Debug, Clone)]
pub struct StrictTables<'g> {
    tree: RootedOrderedTree<'g>,
    /// `single[v][i-1][s]` is L(v,i,s).
    single: Vec<Vec<Vec<Ext>>>,
    single_choice: Vec<Vec<Vec<Option<EdgeChoice>>>>,
    /// `prefix[v][i][s]` is L⁺(v,i,s).
    prefix: Vec<Vec<Vec<Ext>>>,
    prefix_split: Vec<Vec<Vec<usize>>>,
}

impl<'g> StrictTables<'g> {
    pub fn build(
        tree_graph: &'g Graph,
        t: &AffineTolerance,
    ) -> Result<StrictTables<'g>, TreeError> {
        let tree = RootedOrderedTree::new(tree_graph)?;
        let n = tree_graph.n();
        let beta = *t.beta();
        let alpha = *t.alpha();
        let rate = t.slack_rate();
        let cap = |x: Ext| if x.le(&beta) { x } else { Ext::PosInf };

        let mut single = vec![Vec::new(); n];
        let mut single_choice = vec![Vec::new(); n];
        let mut prefix = vec![Vec::new(); n];
        let mut prefix_split = vec![Vec::new(); n];

        for v in tree.postorder() {
            prefix[v].push(vec![Ext::zero()]);
            prefix_split[v].push(vec![0]);
            for i in 1..=tree.child_count(v) {
                let u = tree.child(v, i);
                let len = tree_graph.edge(tree.parent_edge(u).unwrap()).len;
                let below: &Vec<Ext> = prefix[u].last().unwrap();
                let below_edges = below.len() - 1;

                // μ = min{L⁺(u,c(u),s−1) + ℓ/α, max{L⁺(u,c(u),s) − (1−1/α)ℓ, 0}}.
                let mut row = Vec::with_capacity(below_edges + 2);
                let mut choices = Vec::with_capacity(below_edges + 2);
                for s in 0..=below_edges + 1 {
                    let omit = match below.get(s) {
                        Some(Ext::Finite(l)) => Ext::Finite((l - rate * len).max(Rational::zero())),
                        _ => Ext::PosInf,
                    };
                    let add = match s.checked_sub(1).and_then(|k| below.get(k)) {
                        Some(Ext::Finite(l)) => Ext::Finite(l + len / alpha),
                        _ => Ext::PosInf,
                    };
                    let (best, choice) = if omit <= add {
                        (omit, EdgeChoice::Omit)
                    } else {
                        (add, EdgeChoice::Add)
                    };
                    let best = cap(best);
                    choices.push(best.is_finite().then_some(choice));
                    row.push(best);
                }

                // L⁺(v,i,s) = min over t of max{L⁺(v,i−1,t), L(v,i,s−t)}
                // subject to L⁺(v,i−1,t) + L(v,i,s−t) ≤ β.
                let left = prefix[v].last().unwrap();
                let mut merged = vec![Ext::PosInf; left.len() + row.len() - 1];
                let mut split = vec![0; merged.len()];
                for (tt, a) in left.iter().enumerate() {
                    let Ext::Finite(a) = a else { continue };
                    for (k, b) in row.iter().enumerate() {
                        let Ext::Finite(b) = b else { continue };
                        if a + b > beta {
                            continue;
                        }
                        let value = Ext::Finite(*a.max(b));
                        // Strict improvement keeps the smallest split on ties.
                        if value < merged[tt + k] {
                            merged[tt + k] = value;
                            split[tt + k] = tt;
                        }
                    }
                }
                single[v].push(row);
                single_choice[v].push(choices);
                prefix[v].push(merged);
                prefix_split[v].push(split);
            }
        }
        Ok(StrictTables {
            tree,
            single,
            single_choice,
            prefix,
            prefix_split,
        })
    }

    pub fn tree(&self) -> &RootedOrderedTree<'g> {
        &self.tree
    }

    /// L(v,i,s), i ≥ 1; +∞ beyond the part's edge count.
    pub fn single(&self, v: usize, i: usize, s: usize) -> Ext {
        self.single[v][i - 1].get(s).cloned().unwrap_or(Ext::PosInf)
    }

    /// L⁺(v,i,s), i ≥ 0; +∞ beyond the part's edge count.
    pub fn prefix(&self, v: usize, i: usize, s: usize) -> Ext {
        self.prefix[v][i].get(s).cloned().unwrap_or(Ext::PosInf)
    }

    /// Largest s with L⁺(r, c(r), s) finite.
    pub fn optimum(&self) -> usize {
        let root = self.tree.root();
        let row = self.prefix[root].last().unwrap();
        row.iter()
            .rposition(Ext::is_finite)
            .expect("s = 0 is feasible")
    }

    pub fn reconstruct(&self, s: usize) -> EdgeSet {
        let mut mask = vec![false; self.tree.graph().m()];
        let root = self.tree.root();
        self.walk_prefix(root, self.tree.child_count(root), s, &mut mask);
        EdgeSet::from_mask(mask)
    }

    fn walk_prefix(&self, v: usize, i: usize, s: usize, mask: &mut [bool]) {
        if i == 0 {
            return;
        }
        let t = self.prefix_split[v][i][s];
        self.walk_prefix(v, i - 1, t, mask);
        self.walk_single(v, i, s - t, mask);
    }

    fn walk_single(&self, v: usize, i: usize, s: usize, mask: &mut [bool]) {
        let u = self.tree.child(v, i);
        let below = self.tree.child_count(u);
        match self.single_choice[v][i - 1][s].expect("finite entry") {
            EdgeChoice::Omit => self.walk_prefix(u, below, s, mask),
            EdgeChoice::Add => {
                mask[self.tree.parent_edge(u).unwrap()] = true;
                self.walk_prefix(u, below, s - 1, mask);
            }
        }
    }

    /// One line per entry: `L v i s value` and `L+ v i s value`.
    pub fn dump(&self) -> String {
        let mut out = String::from("# strict tables: <L|L+> <v> <i> <s> <value|inf>\n");
        for v in 0..self.tree.graph().n() {
            for (i, row) in self.prefix[v].iter().enumerate() {
                if i > 0 {
                    for (s, x) in self.single[v][i - 1].iter().enumerate() {
                        writeln!(out, "L {v} {i} {s} {x}").unwrap();
                    }
                }
                for (s, x) in row.iter().enumerate() {
                    writeln!(out, "L+ {v} {i} {s} {x}").unwrap();
                }
            }
        }
        out
    }
}

/// A maximum-cardinality (α, β)-contraction of a weighted tree.
pub fn solve_tree_contraction(
    tree: &Graph,
    t: &AffineTolerance,
) -> Result<TreeSolution, TreeError> {
    let tables = StrictTables::build(tree, t)?;
    Ok(TreeSolution {
        contracted: tables.reconstruct(tables.optimum()),
    })
}
