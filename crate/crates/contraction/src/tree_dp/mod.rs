//! Exact dynamic programs on weighted trees.
//!
//! Both programs walk an ordered rooted tree: rooted at vertex 0, children in
//! increasing id order. For a vertex v with children u₁ … u_c:
//!
//! * `T_v` is the subtree below v,
//! * `T_{v,i}` is v together with the edge to u_i and `T_{u_i}`,
//! * `T⁺_{v,i}` is v together with `T_{v,1}` … `T_{v,i}` (so `T⁺_{v,0} = {v}`).

mod pareto;
mod strict;
mod weak;

pub use pareto::{naive_merge, pareto_merge, prune_front, MergeOutcome, ParetoEntry};
pub use strict::{solve_tree_contraction, StrictTables};
pub use weak::{solve_tree_weak_contraction, Back, FrontKind, WeakTables};

use thiserror::Error;

use crate::graph::{EdgeId, EdgeSet, Graph, ScaledLengths};
use crate::rational::{Ext, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("input is not a tree")]
    NotATree,
    #[error("a single vertex has no weak contraction")]
    NoWeakSolution,
}

/// One of the subtree shapes the programs are indexed by. Every shape hangs
/// from an anchor vertex v, and loads are measured at v.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// `T_v`.
    Subtree(usize),
    /// `T_{v,i}`, with i counted from 1.
    Branch(usize, usize),
    /// `T⁺_{v,i}`, with i counted from 0.
    Prefix(usize, usize),
}

impl Part {
    pub fn anchor(&self) -> usize {
        match *self {
            Part::Subtree(v) | Part::Branch(v, _) | Part::Prefix(v, _) => v,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootedOrderedTree<'g> {
    graph: &'g Graph,
    parent: Vec<Option<usize>>,
    parent_edge: Vec<Option<EdgeId>>,
    children: Vec<Vec<usize>>,
    preorder: Vec<usize>,
}

impl<'g> RootedOrderedTree<'g> {
    pub fn new(graph: &'g Graph) -> Result<RootedOrderedTree<'g>, TreeError> {
        if !graph.is_tree() {
            return Err(TreeError::NotATree);
        }
        let n = graph.n();
        let mut parent = vec![None; n];
        let mut parent_edge = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![0];
        let mut seen = vec![false; n];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            preorder.push(v);
            let mut kids: Vec<(usize, EdgeId)> = graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&(w, _)| !seen[w])
                .collect();
            kids.sort_unstable();
            for &(w, e) in &kids {
                seen[w] = true;
                parent[w] = Some(v);
                parent_edge[w] = Some(e);
            }
            children[v] = kids.iter().map(|&(w, _)| w).collect();
            stack.extend(children[v].iter().rev());
        }
        Ok(RootedOrderedTree {
            graph,
            parent,
            parent_edge,
            children,
            preorder,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Edge from v up to its parent.
    pub fn parent_edge(&self, v: usize) -> Option<EdgeId> {
        self.parent_edge[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// c(v).
    pub fn child_count(&self, v: usize) -> usize {
        self.children[v].len()
    }

    /// The i-th child, counted from 1.
    pub fn child(&self, v: usize, i: usize) -> usize {
        self.children[v][i - 1]
    }

    /// Children before parents.
    pub fn postorder(&self) -> Vec<usize> {
        self.preorder.iter().rev().copied().collect()
    }

    fn collect_subtree(&self, v: usize, out: &mut Vec<usize>) {
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.children[x].iter().copied());
        }
    }

    /// Vertices of a part, anchor first.
    pub fn vertices(&self, part: Part) -> Vec<usize> {
        let (v, kids): (usize, &[usize]) = match part {
            Part::Subtree(v) => (v, &self.children[v]),
            Part::Branch(v, i) => (v, &self.children[v][i - 1..i]),
            Part::Prefix(v, i) => (v, &self.children[v][..i]),
        };
        let mut out = vec![v];
        for &u in kids {
            self.collect_subtree(u, &mut out);
        }
        out
    }

    pub fn edges(&self, part: Part) -> Vec<EdgeId> {
        let anchor = part.anchor();
        let mut out: Vec<EdgeId> = self
            .vertices(part)
            .into_iter()
            .filter(|&x| x != anchor)
            .map(|x| self.parent_edge[x].expect("non-anchor has a parent in the part"))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Per-vertex `(dist_ℓ(u, v)/α − dist_{ℓ_C}(u, v), dist_{ℓ_C}(u, v))` for u in the part.
fn loads_from_anchor(
    tree: &RootedOrderedTree<'_>,
    c: &EdgeSet,
    alpha: &Rational,
    part: Part,
) -> Vec<(Rational, Rational)> {
    let g = tree.graph();
    let lengths = ScaledLengths::new(g);
    let v = part.anchor();
    let before = lengths.sssp(g, None, v);
    let after = lengths.sssp(g, Some(c.mask()), v);
    tree.vertices(part)
        .into_iter()
        .map(|u| {
            let d = lengths.to_rational(before[u].expect("tree is connected"));
            let dc = lengths.to_rational(after[u].expect("tree is connected"));
            (d / alpha - dc, dc)
        })
        .collect()
}

/// load_{C,α}(part, v): the largest dist_ℓ(u,v)/α − dist_{ℓ_C}(u,v) over u
/// in the part, where v is the part's anchor. Never negative since u = v
/// contributes 0.
pub fn load_at(
    tree: &RootedOrderedTree<'_>,
    c: &EdgeSet,
    alpha: &Rational,
    part: Part,
) -> Rational {
    loads_from_anchor(tree, c, alpha, part)
        .into_iter()
        .map(|(load, _)| load)
        .max()
        .expect("a part contains its anchor")
}

/// Like [`load_at`] but only over u at positive contracted distance; −∞ when
/// the whole part is contracted into v.
pub fn weak_load_at(
    tree: &RootedOrderedTree<'_>,
    c: &EdgeSet,
    alpha: &Rational,
    part: Part,
) -> Ext {
    loads_from_anchor(tree, c, alpha, part)
        .into_iter()
        .filter(|(_, dc)| *dc > Rational::from_integer(0))
        .map(|(load, _)| Ext::Finite(load))
        .max()
        .unwrap_or(Ext::NegInf)
}

/// An optimal edge set found by one of the programs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSolution {
    pub contracted: EdgeSet,
}

impl TreeSolution {
    pub fn size(&self) -> usize {
        self.contracted.len()
    }
}
