//! Clique cutset decomposition and merging of atom colorings.
//!
//! Separators come from a minimal elimination ordering (MCS-M): every
//! clique minimal separator of `G` is the higher neighbourhood of some
//! vertex in the minimal triangulation, so scanning those sets finds a
//! clique cutset whenever one exists. Found separators are shrunk to
//! minimal ones before splitting, which keeps atoms non-redundant.

use serde::Serialize;
use thiserror::Error;

use crate::color::Coloring;
use crate::graph::{induced_subgraph, non_adjacent_pair, Graph, Vertex, VertexSet};

/// A clique `cutset` with `v1 ∪ v2 = V` and `v1 ∩ v2 = cutset`, and no
/// edges between `v1 - cutset` and `v2 - cutset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutsetSplit {
    pub cutset: VertexSet,
    pub v1: VertexSet,
    pub v2: VertexSet,
}

/// Minimal elimination ordering via MCS-M. Returns the elimination order
/// and, for each vertex, its neighbours in the triangulation that are
/// eliminated later.
fn mcs_m(g: &Graph) -> (Vec<Vertex>, Vec<VertexSet>) {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut picked = Vec::with_capacity(n);
    let mut higher: Vec<VertexSet> = vec![VertexSet::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&u| !numbered[u])
            .max_by_key(|&u| (weight[u], std::cmp::Reverse(u)))
            .unwrap();
        // reach[u]: least possible maximum interior weight over paths from
        // v to u through unnumbered vertices (-1 for a direct edge)
        let mut reach: Vec<Option<isize>> = vec![None; n];
        let mut done = vec![false; n];
        for &u in g.neighbors(v) {
            if !numbered[u] {
                reach[u] = Some(-1);
            }
        }
        loop {
            let next = (0..n)
                .filter(|&u| !numbered[u] && u != v && !done[u] && reach[u].is_some())
                .min_by_key(|&u| (reach[u].unwrap(), u));
            let Some(u) = next else { break };
            done[u] = true;
            let through = reach[u].unwrap().max(weight[u] as isize);
            for &x in g.neighbors(u) {
                if !numbered[x] && x != v && !done[x] && reach[x].is_none_or(|r| through < r) {
                    reach[x] = Some(through);
                }
            }
        }
        let mut s = Vec::new();
        for u in 0..n {
            if let Some(r) = reach[u] {
                if u != v && !numbered[u] && r < weight[u] as isize {
                    s.push(u);
                }
            }
        }
        for &u in &s {
            weight[u] += 1;
        }
        numbered[v] = true;
        picked.push(v);
        for u in s {
            // u is numbered later in the loop, i.e. eliminated before v
            higher[u] = higher[u].union(&VertexSet::singleton(v));
        }
    }
    picked.reverse();
    (picked, higher)
}

fn neighborhood_of(g: &Graph, c: &VertexSet) -> VertexSet {
    c.iter().flat_map(|v| g.neighbors(v).iter().copied()).filter(|&u| !c.contains(u)).collect()
}

/// Shrinks a clique separator of a connected graph to a minimal one.
fn minimalize(g: &Graph, s: &VertexSet) -> VertexSet {
    let comps = g.components_avoiding(s);
    let c1 = &comps[0];
    let s1 = neighborhood_of(g, c1);
    let comps1 = g.components_avoiding(&s1);
    let c2 = comps1
        .iter()
        .find(|c| c.is_disjoint(c1))
        .expect("a separator leaves a second component");
    neighborhood_of(g, c2)
}

fn split_at(g: &Graph, cutset: VertexSet) -> CutsetSplit {
    let comps = g.components_avoiding(&cutset);
    let full = comps
        .iter()
        .find(|c| neighborhood_of(g, c) == cutset)
        .expect("minimal separators have full components");
    CutsetSplit {
        v1: full.union(&cutset),
        v2: g.all_vertices().difference(full),
        cutset,
    }
}

/// A clique cutset, if any. A disconnected graph yields the empty cutset
/// with `v1` the component of the smallest vertex.
pub fn find_clique_cutset(g: &Graph) -> Option<CutsetSplit> {
    let comps = g.components();
    if comps.len() > 1 {
        let v1 = comps[0].clone();
        return Some(CutsetSplit { v2: g.all_vertices().difference(&v1), v1, cutset: VertexSet::new() });
    }
    if g.n() < 3 {
        return None;
    }
    let (order, higher) = mcs_m(g);
    for x in order {
        let s = &higher[x];
        if s.is_empty() || non_adjacent_pair(g, s).is_some() {
            continue;
        }
        if g.components_avoiding(s).len() > 1 {
            return Some(split_at(g, minimalize(g, s)));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum DecompTree {
    Atom {
        vertices: VertexSet,
    },
    Split {
        vertices: VertexSet,
        cutset: VertexSet,
        left: Box<DecompTree>,
        right: Box<DecompTree>,
    },
}

impl DecompTree {
    pub fn vertices(&self) -> &VertexSet {
        match self {
            DecompTree::Atom { vertices } | DecompTree::Split { vertices, .. } => vertices,
        }
    }

    /// Leaf vertex sets, left to right.
    pub fn atoms(&self) -> Vec<&VertexSet> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a VertexSet>) {
        match self {
            DecompTree::Atom { vertices } => out.push(vertices),
            DecompTree::Split { left, right, .. } => {
                left.collect_atoms(out);
                right.collect_atoms(out);
            }
        }
    }

    pub fn atom_count(&self) -> usize {
        match self {
            DecompTree::Atom { .. } => 1,
            DecompTree::Split { left, right, .. } => left.atom_count() + right.atom_count(),
        }
    }

    /// Re-checks every node: cutsets are cliques that separate, children
    /// cover the node and meet in the cutset, leaves have no clique cutset.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        match self {
            DecompTree::Atom { vertices } => {
                let sub = induced_subgraph(g, vertices).map_err(|e| e.to_string())?;
                match find_clique_cutset(&sub.graph) {
                    None => Ok(()),
                    Some(s) => Err(format!("atom {vertices:?} has clique cutset {:?}", sub.set_to_parent(&s.cutset))),
                }
            }
            DecompTree::Split { vertices, cutset, left, right } => {
                let (v1, v2) = (left.vertices(), right.vertices());
                if v1.union(v2) != *vertices || v1.intersection(v2) != *cutset {
                    return Err(format!("children of {vertices:?} do not meet in {cutset:?}"));
                }
                if let Some((u, v)) = non_adjacent_pair(g, cutset) {
                    return Err(format!("cutset {cutset:?} misses edge {u}-{v}"));
                }
                let (a, b) = (v1.difference(cutset), v2.difference(cutset));
                if a.is_empty() || b.is_empty() {
                    return Err(format!("cutset {cutset:?} leaves an empty side"));
                }
                if let Some((u, v)) = a.iter().flat_map(|u| b.iter().map(move |v| (u, v))).find(|&(u, v)| g.has_edge(u, v)) {
                    return Err(format!("edge {u}-{v} crosses cutset {cutset:?}"));
                }
                left.verify(g)?;
                right.verify(g)
            }
        }
    }
}

pub fn decompose(g: &Graph) -> DecompTree {
    decompose_set(g, g.all_vertices())
}

fn decompose_set(g: &Graph, vertices: VertexSet) -> DecompTree {
    let sub = induced_subgraph(g, &vertices).expect("subset of g");
    match find_clique_cutset(&sub.graph) {
        None => DecompTree::Atom { vertices },
        Some(split) => {
            let v1 = sub.set_to_parent(&split.v1);
            let v2 = sub.set_to_parent(&split.v2);
            DecompTree::Split {
                cutset: sub.set_to_parent(&split.cutset),
                left: Box::new(decompose_set(g, v1)),
                right: Box::new(decompose_set(g, v2)),
                vertices,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MergeError {
    #[error("expected {expected} atom colorings, got {got}")]
    CountMismatch { expected: usize, got: usize },
    #[error("coloring of atom {0} is not proper or has the wrong length")]
    ImproperInput(usize),
}

/// Combines proper colorings of the atoms (each indexed like the sorted
/// atom vertex set) into a coloring of `g` using the maximum number of
/// colors over the atoms.
pub fn merge_colorings(g: &Graph, tree: &DecompTree, atom_colorings: &[Coloring]) -> Result<Coloring, MergeError> {
    let expected = tree.atom_count();
    if atom_colorings.len() != expected {
        return Err(MergeError::CountMismatch { expected, got: atom_colorings.len() });
    }
    let mut next = 0;
    let partial = merge_node(g, tree, atom_colorings, &mut next)?;
    let mut colors = vec![0; g.n()];
    for (v, c) in partial {
        colors[v] = c;
    }
    Ok(Coloring::new(colors))
}

/// Colors of the node's vertices, parallel to its sorted vertex set.
fn merge_node(
    g: &Graph,
    node: &DecompTree,
    leaves: &[Coloring],
    next: &mut usize,
) -> Result<Vec<(Vertex, usize)>, MergeError> {
    match node {
        DecompTree::Atom { vertices } => {
            let idx = *next;
            *next += 1;
            let c = &leaves[idx];
            let sub = induced_subgraph(g, vertices).expect("atom within g");
            if c.len() != vertices.len() || !c.is_proper(&sub.graph) {
                return Err(MergeError::ImproperInput(idx));
            }
            let c = c.normalized();
            Ok(vertices.iter().zip(c.colors().iter().copied()).collect())
        }
        DecompTree::Split { cutset, left, right, .. } => {
            let a = merge_node(g, left, leaves, next)?;
            let b = merge_node(g, right, leaves, next)?;
            let color_of = |m: &[(Vertex, usize)], v: Vertex| m.iter().find(|&&(u, _)| u == v).map(|&(_, c)| c);
            // map b's colors so that the shared clique agrees with a
            let b_colors = b.iter().map(|&(_, c)| c).max().map_or(0, |c| c + 1);
            let mut perm: Vec<Option<usize>> = vec![None; b_colors];
            let mut taken = Vec::new();
            for s in cutset.iter() {
                let (ca, cb) = (color_of(&a, s).unwrap(), color_of(&b, s).unwrap());
                perm[cb] = Some(ca);
                taken.push(ca);
            }
            let mut free = (0..).filter(|c| !taken.contains(c));
            for p in perm.iter_mut().filter(|p| p.is_none()) {
                *p = free.next();
            }
            let mut out = a;
            for (v, c) in b {
                if !cutset.contains(v) {
                    out.push((v, perm[c].unwrap()));
                }
            }
            out.sort_unstable();
            Ok(out)
        }
    }
}
