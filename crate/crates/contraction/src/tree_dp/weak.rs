//! The Pareto-front program for weak contractions on trees.
//!
//! For every shape `T_{v,i}` / `T⁺_{v,i}` and size s it keeps the front of
//! non-dominated (load, weak load) pairs at v over size-s sets that are weakly
//! feasible on the shape or contract all of it. Extending by an edge maps a
//! front pointwise; gluing two shapes at v uses [`pareto_merge`] once per
//! threshold λ in Λ(T⁺_{v,i}, v) ∪ {λ*}.

use std::fmt::Write;

use num_traits::Zero;

use super::pareto::{pareto_merge, prune_front, MergeOutcome, ParetoEntry};
use super::{Part, RootedOrderedTree, TreeError, TreeSolution};
use crate::graph::{EdgeSet, Graph, ScaledLengths};
use crate::rational::{Ext, Rational};
use crate::tolerance::AffineTolerance;

/// How a front entry was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Back {
    /// `T⁺_{v,0}` with nothing contracted.
    Base,
    /// The edge to the child stays; `entry` indexes the child's front at the same size.
    Omit { entry: usize },
    /// The edge to the child is contracted; `entry` indexes the child's front at size s−1.
    Add { entry: usize },
    /// Glued from `T⁺_{v,i−1}` at size `split` and `T_{v,i}` at size s − `split`.
    Join {
        split: usize,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontKind {
    /// Fronts of `T_{v,i}`, i ≥ 1.
    Branch,
    /// Fronts of `T⁺_{v,i}`, i ≥ 0.
    Prefix,
}

type Front = Vec<ParetoEntry<Back>>;

#[derive(Debug, Clone)]
pub struct WeakTables<'g> {
    tree: RootedOrderedTree<'g>,
    /// `branch[v][i-1][s]`.
    branch: Vec<Vec<Vec<Front>>>,
    /// `prefix[v][i][s]`.
    prefix: Vec<Vec<Vec<Front>>>,
    /// Sorted Λ(T⁺_{v,i}, v) and Λ(T_{v,i}, v).
    lambda_prefix: Vec<Vec<Vec<Rational>>>,
    lambda_branch: Vec<Vec<Vec<Rational>>>,
}

fn lambda_set(
    tree: &RootedOrderedTree<'_>,
    dist: &[Option<i128>],
    lengths: &ScaledLengths,
    alpha: &Rational,
    part: Part,
) -> Vec<Rational> {
    let mut out: Vec<Rational> = tree
        .vertices(part)
        .into_iter()
        .map(|u| lengths.to_rational(dist[u].expect("tree is connected")) / alpha)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Best of several merge outcomes by (first key, second key, split).
fn better(
    candidate: &MergeOutcome,
    incumbent: &Option<(MergeOutcome, usize)>,
    by_weak_first: bool,
) -> bool {
    match incumbent {
        None => true,
        Some((best, _)) => {
            if by_weak_first {
                (&candidate.weak_load, &candidate.load) < (&best.weak_load, &best.load)
            } else {
                (&candidate.load, &candidate.weak_load) < (&best.load, &best.weak_load)
            }
        }
    }
}

impl<'g> WeakTables<'g> {
    pub fn build(tree_graph: &'g Graph, t: &AffineTolerance) -> Result<WeakTables<'g>, TreeError> {
        let tree = RootedOrderedTree::new(tree_graph)?;
        let n = tree_graph.n();
        let alpha = *t.alpha();
        let beta = *t.beta();
        let rate = t.slack_rate();
        let lengths = ScaledLengths::new(tree_graph);

        let mut branch: Vec<Vec<Vec<Front>>> = vec![Vec::new(); n];
        let mut prefix: Vec<Vec<Vec<Front>>> = vec![Vec::new(); n];
        let mut lambda_prefix = vec![Vec::new(); n];
        let mut lambda_branch = vec![Vec::new(); n];

        for v in tree.postorder() {
            let dist = lengths.sssp(tree_graph, None, v);
            lambda_prefix[v].push(vec![Rational::zero()]);
            prefix[v].push(vec![vec![ParetoEntry {
                load: Rational::zero(),
                weak_load: Ext::NegInf,
                back: Back::Base,
            }]]);

            for i in 1..=tree.child_count(v) {
                let u = tree.child(v, i);
                let len = tree_graph.edge(tree.parent_edge(u).unwrap()).len;
                let step = len / alpha;
                let shrink = rate * len;
                let below: &Vec<Front> = prefix[u].last().unwrap();

                // Extend T_u by the edge {v, u}.
                let mut fronts = Vec::with_capacity(below.len() + 1);
                for s in 0..=below.len() {
                    let mut cands = Vec::new();
                    if let Some(front) = below.get(s) {
                        for (k, e) in front.iter().enumerate() {
                            // Everything in T_u is now at positive distance from v.
                            let weak = e.load - shrink;
                            if weak <= beta {
                                cands.push(ParetoEntry {
                                    load: weak.max(Rational::zero()),
                                    weak_load: Ext::Finite(weak),
                                    back: Back::Omit { entry: k },
                                });
                            }
                        }
                    }
                    if let Some(front) = s.checked_sub(1).and_then(|k| below.get(k)) {
                        for (k, e) in front.iter().enumerate() {
                            let weak = &e.weak_load + &step;
                            if weak.le(&beta) {
                                cands.push(ParetoEntry {
                                    load: e.load + step,
                                    weak_load: weak,
                                    back: Back::Add { entry: k },
                                });
                            }
                        }
                    }
                    fronts.push(prune_front(cands));
                }
                lambda_branch[v].push(lambda_set(
                    &tree,
                    &dist,
                    &lengths,
                    &alpha,
                    Part::Branch(v, i),
                ));

                // Glue T⁺_{v,i−1} and T_{v,i} at v.
                let lambdas = lambda_set(&tree, &dist, &lengths, &alpha, Part::Prefix(v, i));
                let left: &Vec<Front> = prefix[v].last().unwrap();
                let mut glued = Vec::with_capacity(left.len() + fronts.len() - 1);
                for s in 0..left.len() + fronts.len() - 1 {
                    let splits = s.saturating_sub(fronts.len() - 1)..=s.min(left.len() - 1);
                    let mut cands = Vec::new();
                    let mut best_star: Option<(MergeOutcome, usize)> = None;
                    for split in splits.clone() {
                        if let Some(r) = pareto_merge(&left[split], &fronts[s - split], &beta, None)
                        {
                            if better(&r, &best_star, false) {
                                best_star = Some((r, split));
                            }
                        }
                    }
                    let Some((star, star_split)) = best_star else {
                        glued.push(Vec::new());
                        continue;
                    };
                    cands.push((star, star_split));
                    for lambda in &lambdas {
                        let mut best: Option<(MergeOutcome, usize)> = None;
                        for split in splits.clone() {
                            if let Some(r) =
                                pareto_merge(&left[split], &fronts[s - split], &beta, Some(lambda))
                            {
                                if better(&r, &best, true) {
                                    best = Some((r, split));
                                }
                            }
                        }
                        cands.extend(best);
                    }
                    glued.push(prune_front(
                        cands
                            .into_iter()
                            .map(|(r, split)| ParetoEntry {
                                load: r.load,
                                weak_load: r.weak_load,
                                back: Back::Join {
                                    split,
                                    left: r.left,
                                    right: r.right,
                                },
                            })
                            .collect(),
                    ));
                }
                branch[v].push(fronts);
                prefix[v].push(glued);
                lambda_prefix[v].push(lambdas);
            }
        }
        Ok(WeakTables {
            tree,
            branch,
            prefix,
            lambda_prefix,
            lambda_branch,
        })
    }

    pub fn tree(&self) -> &RootedOrderedTree<'g> {
        &self.tree
    }

    /// The front of `T_{v,i}` (Branch, i ≥ 1) or `T⁺_{v,i}` (Prefix) at size s.
    pub fn front(&self, kind: FrontKind, v: usize, i: usize, s: usize) -> &[ParetoEntry<Back>] {
        let fronts = match kind {
            FrontKind::Branch => &self.branch[v][i - 1],
            FrontKind::Prefix => &self.prefix[v][i],
        };
        fronts.get(s).map_or(&[], Vec::as_slice)
    }

    /// Λ of `T_{v,i}` or `T⁺_{v,i}` at v, sorted.
    pub fn lambdas(&self, kind: FrontKind, v: usize, i: usize) -> &[Rational] {
        match kind {
            FrontKind::Branch => &self.lambda_branch[v][i - 1],
            FrontKind::Prefix => &self.lambda_prefix[v][i],
        }
    }

    /// λ*: the least load on the front, if any set of that size qualifies.
    pub fn lambda_star(&self, kind: FrontKind, v: usize, i: usize, s: usize) -> Option<Rational> {
        self.front(kind, v, i, s).first().map(|e| e.load)
    }

    /// W(λ): least weak load among entries with load ≤ λ; +∞ if none.
    pub fn weak_at(&self, kind: FrontKind, v: usize, i: usize, s: usize, lambda: &Rational) -> Ext {
        front_weak_at(self.front(kind, v, i, s), lambda).0
    }

    /// L(λ): least load among entries attaining W(λ); +∞ if none.
    pub fn load_at(&self, kind: FrontKind, v: usize, i: usize, s: usize, lambda: &Rational) -> Ext {
        front_weak_at(self.front(kind, v, i, s), lambda).1
    }

    /// Largest s whose root front holds a set with finite weak load, i.e. one
    /// that does not contract the whole tree.
    pub fn optimum(&self) -> Option<(usize, usize)> {
        let root = self.tree.root();
        let fronts = self.prefix[root].last().unwrap();
        (0..fronts.len()).rev().find_map(|s| {
            fronts[s]
                .iter()
                .position(|e| e.weak_load.is_finite())
                .map(|k| (s, k))
        })
    }

    pub fn reconstruct(&self, s: usize, entry: usize) -> EdgeSet {
        let mut mask = vec![false; self.tree.graph().m()];
        let root = self.tree.root();
        self.walk(
            FrontKind::Prefix,
            root,
            self.tree.child_count(root),
            s,
            entry,
            &mut mask,
        );
        EdgeSet::from_mask(mask)
    }

    fn walk(&self, kind: FrontKind, v: usize, i: usize, s: usize, entry: usize, mask: &mut [bool]) {
        let e = &self.front(kind, v, i, s)[entry];
        match e.back {
            Back::Base => {}
            Back::Join { split, left, right } => {
                self.walk(FrontKind::Prefix, v, i - 1, split, left, mask);
                self.walk(FrontKind::Branch, v, i, s - split, right, mask);
            }
            Back::Omit { entry } | Back::Add { entry } => {
                let u = self.tree.child(v, i);
                let below = self.tree.child_count(u);
                let size = if matches!(e.back, Back::Add { .. }) {
                    mask[self.tree.parent_edge(u).unwrap()] = true;
                    s - 1
                } else {
                    s
                };
                self.walk(FrontKind::Prefix, u, below, size, entry, mask);
            }
        }
    }

    /// Front entries, then W/L rows at each λ in Λ ∪ {λ*}:
    ///
    /// ```text
    /// P <T|T+> <v> <i> <s> <load> <wload>
    /// <W|W+> <v> <i> <s> <lambda> <W(lambda)> <L(lambda)>
    /// ```
    pub fn dump(&self) -> String {
        let mut out = String::from(
            "# weak tables\n# P <T|T+> <v> <i> <s> <load> <wload>\n# <W|W+> <v> <i> <s> <lambda> <W> <L>\n",
        );
        for v in 0..self.tree.graph().n() {
            for i in 0..=self.tree.child_count(v) {
                for kind in [FrontKind::Branch, FrontKind::Prefix] {
                    if kind == FrontKind::Branch && i == 0 {
                        continue;
                    }
                    let (tag, wtag) = match kind {
                        FrontKind::Branch => ("T", "W"),
                        FrontKind::Prefix => ("T+", "W+"),
                    };
                    let sizes = match kind {
                        FrontKind::Branch => self.branch[v][i - 1].len(),
                        FrontKind::Prefix => self.prefix[v][i].len(),
                    };
                    for s in 0..sizes {
                        for e in self.front(kind, v, i, s) {
                            writeln!(out, "P {tag} {v} {i} {s} {} {}", e.load, e.weak_load)
                                .unwrap();
                        }
                        let mut lambdas = self.lambdas(kind, v, i).to_vec();
                        lambdas.extend(self.lambda_star(kind, v, i, s));
                        lambdas.sort_unstable();
                        lambdas.dedup();
                        for lambda in lambdas {
                            let (w, l) = front_weak_at(self.front(kind, v, i, s), &lambda);
                            writeln!(out, "{wtag} {v} {i} {s} {lambda} {w} {l}").unwrap();
                        }
                    }
                }
            }
        }
        out
    }
}

fn front_weak_at(front: &[ParetoEntry<Back>], lambda: &Rational) -> (Ext, Ext) {
    // Weak loads fall along the front, so the last entry under the cap wins.
    match front.iter().rfind(|e| e.load <= *lambda) {
        Some(e) => (e.weak_load.clone(), Ext::Finite(e.load)),
        None => (Ext::PosInf, Ext::PosInf),
    }
}

/// A maximum-cardinality weak (α, β)-contraction of a weighted tree.
pub fn solve_tree_weak_contraction(
    tree: &Graph,
    t: &AffineTolerance,
) -> Result<TreeSolution, TreeError> {
    let tables = WeakTables::build(tree, t)?;
    let (s, entry) = tables.optimum().ok_or(TreeError::NoWeakSolution)?;
    Ok(TreeSolution {
        contracted: tables.reconstruct(s, entry),
    })
}
