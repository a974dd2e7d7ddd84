//! Simple undirected graphs on dense vertex ids `0..n`.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::ids;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex sets overlap at {0}")]
    Overlap(Vertex),
    #[error("vertex set is empty")]
    EmptySet,
}

/// Immutable simple graph. Adjacency is kept both as bit rows (constant time
/// edge tests) and as sorted neighbour lists (ordered iteration).
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Graph::from_rows(rows))
    }

    fn from_rows(rows: Vec<FixedBitSet>) -> Graph {
        let adj: Vec<Vec<Vertex>> = rows.iter().map(|r| r.ones().collect()).collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { rows, adj, m }
    }

    /// Graph on `n` vertices with edges given by a symmetric predicate.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(Vertex, Vertex) -> bool) -> Graph {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    rows[u].insert(v);
                    rows[v].insert(u);
                }
            }
        }
        Graph::from_rows(rows)
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| false)
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v + 1 == n && n > 2))
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| v == u + 1)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn neighbor_bits(&self, v: Vertex) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::from_sorted(self.vertices().collect())
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.iter().find(|&v| v >= self.n()) {
            Some(v) => Err(GraphError::OutOfRange { vertex: v, n: self.n() }),
            None => Ok(()),
        }
    }

    /// The graph with one extra vertex `n` adjacent to `neighbors`.
    pub fn with_vertex(&self, neighbors: &[Vertex]) -> Graph {
        let n = self.n();
        let mut rows: Vec<FixedBitSet> = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.grow(n + 1);
                r
            })
            .collect();
        rows.push(FixedBitSet::with_capacity(n + 1));
        for &u in neighbors {
            assert!(u < n, "neighbor {u} out of range");
            rows[u].insert(n);
            rows[n].insert(u);
        }
        Graph::from_rows(rows)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n(), &edges).expect("permutation keeps the graph simple")
    }

    /// Disjoint union join: every vertex of `self` adjacent to every vertex
    /// of `other` (which is shifted by `self.n()`).
    pub fn join(&self, other: &Graph) -> Graph {
        let k = self.n();
        Graph::from_fn(k + other.n(), |u, v| match (u < k, v < k) {
            (true, true) => self.has_edge(u, v),
            (false, false) => other.has_edge(u - k, v - k),
            _ => true,
        })
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n(), |u, v| !self.has_edge(u, v))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_avoiding(&VertexSet::new())
    }

    /// Components of `G - removed`.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        for v in removed.iter() {
            seen[v] = true;
        }
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            out.push(VertexSet::from_iter(comp));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// Sorted, duplicate-free set of vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct VertexSet(#[serde(with = "ids::one_based_vec")] Vec<Vertex>);

impl VertexSet {
    pub fn new() -> VertexSet {
        VertexSet(Vec::new())
    }

    fn from_sorted(v: Vec<Vertex>) -> VertexSet {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn singleton(v: Vertex) -> VertexSet {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    /// Position of `v` within the sorted members.
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(a: [Vertex; N]) -> Self {
        a.into_iter().collect()
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// How two disjoint vertex sets see each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UniformStatus {
    /// Every cross pair is an edge.
    Join,
    /// No cross pair is an edge.
    Cojoin,
    Mixed,
}

/// An induced subgraph together with the map back to the parent's ids:
/// local vertex `i` is parent vertex `origin[i]`.
#[derive(Debug, Clone)]
pub struct Induced {
    pub graph: Graph,
    pub origin: Vec<Vertex>,
}

impl Induced {
    pub fn to_parent(&self, local: Vertex) -> Vertex {
        self.origin[local]
    }

    pub fn set_to_parent(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.origin[v]).collect()
    }
}

pub fn make_graph(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
    Graph::new(n, edges)
}

/// `G[S]`, with local vertices numbered in increasing order of their
/// parent ids.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<Induced, GraphError> {
    g.check_set(s)?;
    let origin: Vec<Vertex> = s.iter().collect();
    let graph = Graph::from_fn(origin.len(), |i, j| g.has_edge(origin[i], origin[j]));
    Ok(Induced { graph, origin })
}

pub fn is_clique(g: &Graph, s: &VertexSet) -> Result<bool, GraphError> {
    g.check_set(s)?;
    Ok(non_adjacent_pair(g, s).is_none())
}

/// First non-adjacent pair inside `s`, if any.
pub fn non_adjacent_pair(g: &Graph, s: &VertexSet) -> Option<(Vertex, Vertex)> {
    let vs = s.as_slice();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if !g.has_edge(u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn are_joined(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<UniformStatus, GraphError> {
    g.check_set(a)?;
    g.check_set(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(GraphError::EmptySet);
    }
    if let Some(v) = a.iter().find(|&v| b.contains(v)) {
        return Err(GraphError::Overlap(v));
    }
    Ok(cross_status(g, a, b))
}

/// Unchecked variant of [`are_joined`]; empty sides count as a co-join.
pub(crate) fn cross_status(g: &Graph, a: &VertexSet, b: &VertexSet) -> UniformStatus {
    let mut some = false;
    let mut all = true;
    for u in a.iter() {
        for v in b.iter() {
            if g.has_edge(u, v) {
                some = true;
            } else {
                all = false;
            }
        }
    }
    match (some, all) {
        (true, true) => UniformStatus::Join,
        (false, _) => UniformStatus::Cojoin,
        (true, false) => UniformStatus::Mixed,
    }
}
