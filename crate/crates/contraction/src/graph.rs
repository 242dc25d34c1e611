//! Weighted graphs, contraction sets, shortest paths, and quotients.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet, VecDeque};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{common_denominator, Ext, Rational};

pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index}: endpoint out of range for {n} vertices")]
    EndpointOutOfRange { index: usize, n: usize },
    #[error("edge {index}: loops are not allowed")]
    Loop { index: usize },
    #[error("edge {index}: parallel to an earlier edge between {u} and {v}")]
    Parallel { index: usize, u: usize, v: usize },
    #[error("edge {index}: length must be positive")]
    NonPositiveLength { index: usize },
    #[error("edge id {id} out of range for {m} edges")]
    UnknownEdge { id: EdgeId, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub len: Rational,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

/// A simple undirected graph with positive rational edge lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, EdgeId)>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize, Rational)>) -> Result<Graph, GraphError> {
        let mut seen = HashSet::new();
        let mut adj = vec![Vec::new(); n];
        let mut out = Vec::with_capacity(edges.len());
        for (index, (u, v, len)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { index, n });
            }
            if u == v {
                return Err(GraphError::Loop { index });
            }
            if !len.is_positive() {
                return Err(GraphError::NonPositiveLength { index });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::Parallel { index, u, v });
            }
            adj[u].push((v, index));
            adj[v].push((u, index));
            out.push(Edge { u, v, len });
        }
        Ok(Graph { n, edges: out, adj })
    }

    /// A graph where every edge has length 1.
    pub fn unit(n: usize, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        Graph::new(
            n,
            pairs
                .iter()
                .map(|&(u, v)| (u, v, Rational::from_integer(1)))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(neighbor, edge id)` pairs in insertion order.
    pub fn neighbors(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<EdgeId> {
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    pub fn has_unit_lengths(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.len == Rational::from_integer(1))
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_labels().1 == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() + 1 == self.n && self.is_connected()
    }

    /// Component label per vertex and the number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// A proper 2-colouring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Length (in edges) of a shortest cycle, or `None` for a forest.
    ///
    /// One BFS per vertex; a non-tree edge closing at depths a and b gives a
    /// cycle through the root of length at most a + b + 1, and the minimum over
    /// all roots is exact.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut depth = vec![usize::MAX; self.n];
            let mut via = vec![usize::MAX; self.n];
            depth[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, e) in &self.adj[x] {
                    if e == via[x] {
                        continue;
                    }
                    if depth[y] == usize::MAX {
                        depth[y] = depth[x] + 1;
                        via[y] = e;
                        queue.push_back(y);
                    } else {
                        let len = depth[x] + depth[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// A set of edge ids of one particular graph, kept sorted with a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    ids: Vec<EdgeId>,
    mask: Vec<bool>,
}

impl EdgeSet {
    pub fn empty(m: usize) -> EdgeSet {
        EdgeSet {
            ids: Vec::new(),
            mask: vec![false; m],
        }
    }

    pub fn all(m: usize) -> EdgeSet {
        EdgeSet {
            ids: (0..m).collect(),
            mask: vec![true; m],
        }
    }

    /// Duplicates are ignored; ids must be below `m`.
    pub fn from_ids(
        m: usize,
        ids: impl IntoIterator<Item = EdgeId>,
    ) -> Result<EdgeSet, GraphError> {
        let mut mask = vec![false; m];
        for id in ids {
            if id >= m {
                return Err(GraphError::UnknownEdge { id, m });
            }
            mask[id] = true;
        }
        Ok(EdgeSet::from_mask(mask))
    }

    pub fn from_mask(mask: Vec<bool>) -> EdgeSet {
        let ids = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        EdgeSet { ids, mask }
    }

    /// Bit `i` of `bits` selects edge `i`.
    pub fn from_bits(m: usize, bits: u64) -> EdgeSet {
        EdgeSet::from_mask((0..m).map(|i| bits >> i & 1 == 1).collect())
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.mask.get(id).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Number of edges of the underlying graph.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ids.iter().copied()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        assert_eq!(self.universe(), other.universe());
        EdgeSet::from_mask(
            self.mask
                .iter()
                .zip(&other.mask)
                .map(|(a, b)| *a || *b)
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.ids.iter().all(|&e| other.contains(e))
    }
}

/// Union-find over vertex ids.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> DisjointSets {
        DisjointSets {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Whether the spanning subgraph (V, C) is connected.
pub fn spans_connected(g: &Graph, c: &EdgeSet) -> bool {
    let mut ds = DisjointSets::new(g.n());
    for e in c.iter() {
        ds.union(g.edge(e).u, g.edge(e).v);
    }
    ds.set_count() <= 1
}

/// Edge lengths rescaled to integers by a common denominator.
///
/// Every shortest-path computation runs on these, so all distance arithmetic
/// is exact integer arithmetic.
#[derive(Debug, Clone)]
pub struct ScaledLengths {
    scale: i128,
    weights: Vec<i128>,
}

impl ScaledLengths {
    pub fn new(g: &Graph) -> ScaledLengths {
        let scale = common_denominator(g.edges().iter().map(|e| &e.len));
        let weights = g
            .edges()
            .iter()
            .map(|e| (e.len * scale).to_integer())
            .collect();
        ScaledLengths { scale, weights }
    }

    pub fn scale(&self) -> i128 {
        self.scale
    }

    pub fn weight(&self, e: EdgeId) -> i128 {
        self.weights[e]
    }

    pub fn to_rational(&self, d: i128) -> Rational {
        Rational::new(d, self.scale)
    }

    /// Common value of all non-zeroed weights, if they agree.
    fn uniform_weight(&self, zeroed: Option<&[bool]>) -> Option<Option<i128>> {
        let mut common = None;
        for (e, &w) in self.weights.iter().enumerate() {
            if zeroed.is_some_and(|z| z[e]) {
                continue;
            }
            match common {
                None => common = Some(w),
                Some(c) if c != w => return None,
                _ => {}
            }
        }
        Some(common)
    }

    /// Single-source distances with the edges flagged in `zeroed` at length 0.
    ///
    /// Uses BFS when every effective length is equal, 0-1 BFS when lengths
    /// are zero or one common value, and Dijkstra otherwise.
    pub fn sssp(&self, g: &Graph, zeroed: Option<&[bool]>, source: usize) -> Vec<Option<i128>> {
        let any_zero = zeroed.is_some_and(|z| z.iter().any(|&b| b));
        match self.uniform_weight(zeroed) {
            Some(Some(w)) if !any_zero => self.sssp_bfs(g, w, source),
            Some(w) => self.sssp_zero_one(g, zeroed, w.unwrap_or(1), source),
            None => self.sssp_dijkstra(g, zeroed, source),
        }
    }

    fn sssp_bfs(&self, g: &Graph, w: i128, source: usize) -> Vec<Option<i128>> {
        let mut dist = vec![None; g.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &(y, _) in g.neighbors(x) {
                if dist[y].is_none() {
                    dist[y] = Some(dx + w);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    fn sssp_zero_one(
        &self,
        g: &Graph,
        zeroed: Option<&[bool]>,
        w: i128,
        source: usize,
    ) -> Vec<Option<i128>> {
        let mut dist: Vec<Option<i128>> = vec![None; g.n()];
        let mut done = vec![false; g.n()];
        dist[source] = Some(0);
        let mut deque = VecDeque::from([source]);
        while let Some(x) = deque.pop_front() {
            if done[x] {
                continue;
            }
            done[x] = true;
            let dx = dist[x].unwrap();
            for &(y, e) in g.neighbors(x) {
                let zero = zeroed.is_some_and(|z| z[e]);
                let nd = if zero { dx } else { dx + w };
                if dist[y].is_none_or(|d| nd < d) {
                    dist[y] = Some(nd);
                    if zero {
                        deque.push_front(y);
                    } else {
                        deque.push_back(y);
                    }
                }
            }
        }
        dist
    }

    /// Plain Dijkstra; also the reference the faster variants are tested against.
    pub fn sssp_dijkstra(
        &self,
        g: &Graph,
        zeroed: Option<&[bool]>,
        source: usize,
    ) -> Vec<Option<i128>> {
        let mut dist: Vec<Option<i128>> = vec![None; g.n()];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(0);
        heap.push(Reverse((0i128, source)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if dist[x].is_some_and(|best| d > best) {
                continue;
            }
            for &(y, e) in g.neighbors(x) {
                let w = if zeroed.is_some_and(|z| z[e]) {
                    0
                } else {
                    self.weights[e]
                };
                let nd = d + w;
                if dist[y].is_none_or(|cur| nd < cur) {
                    dist[y] = Some(nd);
                    heap.push(Reverse((nd, y)));
                }
            }
        }
        dist
    }
}

/// All-pairs distances; `None` marks an unreachable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    scale: i128,
    scaled: Vec<Option<i128>>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Ext {
        match self.scaled[u * self.n + v] {
            Some(d) => Ext::Finite(Rational::new(d, self.scale)),
            None => Ext::PosInf,
        }
    }
}

/// `dist_{ℓ_C}` for every pair, where C = `zeroed`.
pub fn shortest_distances(g: &Graph, zeroed: &EdgeSet) -> DistanceMatrix {
    let lengths = ScaledLengths::new(g);
    let mut scaled = Vec::with_capacity(g.n() * g.n());
    for s in 0..g.n() {
        scaled.extend(lengths.sssp(g, Some(zeroed.mask()), s));
    }
    DistanceMatrix {
        n: g.n(),
        scale: lengths.scale(),
        scaled,
    }
}

/// The outcome of contracting an edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionResult {
    pub contracted: EdgeSet,
    /// Loops and parallel copies removed beyond the contracted edges.
    pub delta: usize,
    pub phi: usize,
    pub quotient: Graph,
    /// Super-vertex of each original vertex.
    pub vertex_map: Vec<usize>,
    /// Original edge kept for each quotient edge.
    pub edge_origin: Vec<EdgeId>,
}

impl ContractionResult {
    /// Maps an edge set of the quotient back to original edge ids and joins it with C.
    pub fn lift(&self, quotient_set: &EdgeSet) -> EdgeSet {
        let mut mask = self.contracted.mask().to_vec();
        for e in quotient_set.iter() {
            mask[self.edge_origin[e]] = true;
        }
        EdgeSet::from_mask(mask)
    }
}

/// Contracts C, deletes loops, and keeps the shortest edge of each parallel
/// class (ties go to the smaller original edge id).
///
/// Super-vertices are numbered by their smallest original vertex, and quotient
/// edges keep the order of the original edges they came from, so C = ∅
/// returns the input unchanged.
pub fn apply_contraction(g: &Graph, c: &EdgeSet) -> ContractionResult {
    let mut ds = DisjointSets::new(g.n());
    for e in c.iter() {
        ds.union(g.edge(e).u, g.edge(e).v);
    }
    let mut label = vec![usize::MAX; g.n()];
    let mut vertex_map = vec![0; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        let root = ds.find(v);
        if label[root] == usize::MAX {
            label[root] = next;
            next += 1;
        }
        vertex_map[v] = label[root];
    }
    let mut best: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
    let mut delta = 0;
    for (id, edge) in g.edges().iter().enumerate() {
        if c.contains(id) {
            continue;
        }
        let (a, b) = (vertex_map[edge.u], vertex_map[edge.v]);
        if a == b {
            delta += 1;
            continue;
        }
        let key = (a.min(b), a.max(b));
        match best.get(&key) {
            None => {
                best.insert(key, id);
            }
            Some(&kept) => {
                delta += 1;
                if edge.len < g.edge(kept).len {
                    best.insert(key, id);
                }
            }
        }
    }
    let mut edge_origin: Vec<EdgeId> = best.values().copied().collect();
    edge_origin.sort_unstable();
    let quotient = Graph::new(
        next,
        edge_origin
            .iter()
            .map(|&id| {
                let e = g.edge(id);
                (vertex_map[e.u], vertex_map[e.v], e.len)
            })
            .collect(),
    )
    .expect("quotient of a simple graph is simple");
    ContractionResult {
        contracted: c.clone(),
        delta,
        phi: c.len() + delta,
        quotient,
        vertex_map,
        edge_origin,
    }
}

/// Φ(C) = m(G) − m(G/C).
pub fn phi_value(g: &Graph, c: &EdgeSet) -> usize {
    apply_contraction(g, c).phi
}

/// Sum of all edge lengths; a convenient upper bound on any finite distance.
pub fn total_length(g: &Graph) -> Rational {
    g.edges()
        .iter()
        .fold(Rational::zero(), |acc, e| acc + e.len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn triangle() -> Graph {
        Graph::unit(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(matches!(
            Graph::unit(2, &[(0, 0)]),
            Err(GraphError::Loop { .. })
        ));
        assert!(matches!(
            Graph::unit(2, &[(0, 1), (1, 0)]),
            Err(GraphError::Parallel { .. })
        ));
        assert!(matches!(
            Graph::unit(2, &[(0, 2)]),
            Err(GraphError::EndpointOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::new(2, vec![(0, 1, int(0))]),
            Err(GraphError::NonPositiveLength { .. })
        ));
    }

    #[test]
    fn unit_path_distances() {
        let g = Graph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let d = shortest_distances(&g, &EdgeSet::empty(2));
        assert_eq!(d.get(0, 2), int(2));
        let d = shortest_distances(&g, &EdgeSet::from_ids(2, [0]).unwrap());
        assert_eq!(d.get(0, 2), int(1));
    }

    #[test]
    fn disconnected_pairs_are_infinite() {
        let g = Graph::unit(3, &[(0, 1)]).unwrap();
        let d = shortest_distances(&g, &EdgeSet::empty(1));
        assert_eq!(d.get(0, 2), Ext::PosInf);
        assert_eq!(d.get(2, 2), int(0));
    }

    #[test]
    fn rational_lengths_are_exact() {
        let g = Graph::new(
            3,
            vec![(0, 1, ratio(1, 3)), (1, 2, ratio(1, 6)), (0, 2, int(1))],
        )
        .unwrap();
        let d = shortest_distances(&g, &EdgeSet::empty(3));
        assert_eq!(d.get(0, 2), ratio(1, 2));
    }

    #[test]
    fn triangle_contractions() {
        let g = triangle();
        let r = apply_contraction(&g, &EdgeSet::from_ids(3, [0]).unwrap());
        assert_eq!(
            (r.delta, r.phi, r.quotient.n(), r.quotient.m()),
            (1, 2, 2, 1)
        );
        let r = apply_contraction(&g, &EdgeSet::from_ids(3, [0, 1]).unwrap());
        assert_eq!(
            (r.delta, r.phi, r.quotient.n(), r.quotient.m()),
            (1, 3, 1, 0)
        );
        let r = apply_contraction(&g, &EdgeSet::empty(3));
        assert_eq!(r.phi, 0);
        assert_eq!(r.quotient, g);
    }

    #[test]
    fn parallel_class_keeps_shortest_then_smallest_id() {
        // 0-1 contracted; 2 is joined to both with lengths 3 and 2.
        let g = Graph::new(3, vec![(0, 1, int(1)), (0, 2, int(3)), (1, 2, int(2))]).unwrap();
        let r = apply_contraction(&g, &EdgeSet::from_ids(3, [0]).unwrap());
        assert_eq!(r.edge_origin, vec![2]);
        assert_eq!(r.quotient.edge(0).len, int(2));
        let g = Graph::new(3, vec![(0, 1, int(1)), (0, 2, int(2)), (1, 2, int(2))]).unwrap();
        let r = apply_contraction(&g, &EdgeSet::from_ids(3, [0]).unwrap());
        assert_eq!(r.edge_origin, vec![1]);
    }

    #[test]
    fn structural_queries() {
        let c6 = Graph::unit(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert_eq!(c6.girth(), Some(6));
        assert!(c6.bipartition().is_some());
        assert_eq!(triangle().girth(), Some(3));
        assert!(triangle().bipartition().is_none());
        let path = Graph::unit(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), None);
        assert!(path.is_tree());
        assert!(!c6.is_tree());
    }
}
