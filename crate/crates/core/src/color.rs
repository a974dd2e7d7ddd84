//! Exact clique number and chromatic number.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::{Graph, Vertex, VertexSet};

/// One color per vertex, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Coloring {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: Vertex) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors used.
    pub fn count(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    /// Renames colors to `0..count` in order of first appearance.
    pub fn normalized(&self) -> Coloring {
        let mut names: Vec<usize> = Vec::new();
        let colors = self
            .colors
            .iter()
            .map(|c| match names.iter().position(|x| x == c) {
                Some(i) => i,
                None => {
                    names.push(*c);
                    names.len() - 1
                }
            })
            .collect();
        Coloring { colors }
    }

    /// DIMACS-style solution lines `s <vertex> <color>`, both 1-based.
    pub fn to_solution_lines(&self) -> String {
        self.colors.iter().enumerate().map(|(v, c)| format!("s {} {}\n", v + 1, c + 1)).collect()
    }
}

pub fn verify_coloring(g: &Graph, c: &Coloring) -> bool {
    c.is_proper(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueWitness {
    pub vertices: VertexSet,
    pub size: usize,
}

pub fn max_clique(g: &Graph) -> CliqueWitness {
    let mut best = Vec::new();
    let mut current = Vec::new();
    let mut cand: Vec<Vertex> = g.vertices().collect();
    cand.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    expand(g, cand, &mut current, &mut best);
    let vertices: VertexSet = best.into_iter().collect();
    CliqueWitness { size: vertices.len(), vertices }
}

/// Greedy color classes over `cand`; returns vertices sorted by class with
/// the class number (1-based) as an upper bound on any clique among the
/// prefix ending there.
fn color_sort(g: &Graph, cand: &[Vertex]) -> Vec<(Vertex, usize)> {
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for &v in cand {
        match classes.iter_mut().find(|cl| cl.iter().all(|&u| !g.has_edge(u, v))) {
            Some(cl) => cl.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes
        .into_iter()
        .enumerate()
        .flat_map(|(k, cl)| cl.into_iter().map(move |v| (v, k + 1)))
        .collect()
}

fn expand(g: &Graph, cand: Vec<Vertex>, current: &mut Vec<Vertex>, best: &mut Vec<Vertex>) {
    let order = color_sort(g, &cand);
    for i in (0..order.len()).rev() {
        let (v, bound) = order[i];
        if current.len() + bound <= best.len() {
            return;
        }
        current.push(v);
        let next: Vec<Vertex> = order[..i].iter().map(|&(u, _)| u).filter(|&u| g.has_edge(u, v)).collect();
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(g, next, current, best);
        }
        current.pop();
    }
}

/// Smallest-last ordering; the position of each vertex in it.
fn degeneracy_rank(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut rank = vec![0; n];
    for step in (0..n).rev() {
        let v = (0..n).filter(|&u| !removed[u]).min_by_key(|&u| (deg[u], u)).unwrap();
        removed[v] = true;
        rank[v] = step;
        for &u in g.neighbors(v) {
            deg[u] = deg[u].saturating_sub(1);
        }
    }
    rank
}

struct Dsatur<'a> {
    g: &'a Graph,
    rank: Vec<usize>,
    colors: Vec<Option<usize>>,
    /// neighbours of `v` currently colored `c`
    counts: Vec<Vec<u32>>,
    /// colors seen around `v`
    sat: Vec<FixedBitSet>,
    lower: usize,
    best: usize,
    best_colors: Vec<usize>,
}

impl Dsatur<'_> {
    fn assign(&mut self, v: Vertex, c: usize) {
        self.colors[v] = Some(c);
        for i in 0..self.g.neighbors(v).len() {
            let u = self.g.neighbors(v)[i];
            self.counts[u][c] += 1;
            self.sat[u].insert(c);
        }
    }

    fn unassign(&mut self, v: Vertex, c: usize) {
        self.colors[v] = None;
        for i in 0..self.g.neighbors(v).len() {
            let u = self.g.neighbors(v)[i];
            self.counts[u][c] -= 1;
            if self.counts[u][c] == 0 {
                self.sat[u].set(c, false);
            }
        }
    }

    fn pick(&self) -> Option<Vertex> {
        self.g
            .vertices()
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| (self.sat[v].count_ones(..), std::cmp::Reverse(self.rank[v])))
    }

    fn search(&mut self, used: usize) {
        let Some(v) = self.pick() else {
            if used < self.best {
                self.best = used;
                self.best_colors = self.colors.iter().map(|c| c.unwrap()).collect();
            }
            return;
        };
        for c in 0..(used + 1).min(self.best - 1) {
            if self.sat[v].contains(c) {
                continue;
            }
            self.assign(v, c);
            self.search(used.max(c + 1));
            self.unassign(v, c);
            if self.best <= self.lower {
                return;
            }
        }
    }
}

/// Greedy DSATUR coloring, used as the initial upper bound.
fn greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut sat = vec![FixedBitSet::with_capacity(n + 1); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v].is_none())
            .max_by_key(|&v| (sat[v].count_ones(..), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..).find(|&c| !sat[v].contains(c)).unwrap();
        colors[v] = Some(c);
        for &u in g.neighbors(v) {
            sat[u].insert(c);
        }
    }
    colors.into_iter().map(Option::unwrap).collect()
}

/// Chromatic number and an optimal coloring.
pub fn exact_chromatic(g: &Graph) -> (usize, Coloring) {
    let n = g.n();
    if n == 0 {
        return (0, Coloring::new(Vec::new()));
    }
    let clique = max_clique(g);
    let upper = greedy(g);
    let ub = upper.iter().max().unwrap() + 1;
    if ub == clique.size {
        return (ub, Coloring::new(upper));
    }
    let mut s = Dsatur {
        g,
        rank: degeneracy_rank(g),
        colors: vec![None; n],
        counts: vec![vec![0; n + 1]; n],
        sat: vec![FixedBitSet::with_capacity(n + 1); n],
        lower: clique.size,
        best: ub,
        best_colors: upper,
    };
    // the clique's colors are forced up to renaming
    for (c, v) in clique.vertices.iter().enumerate() {
        s.assign(v, c);
    }
    s.search(clique.size);
    (s.best, Coloring::new(s.best_colors))
}
