//! Induced-pattern search for the six patterns the structure theory is
//! phrased in: 4K1, C4, C5, C6, C7 and the C5-twin.

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::graph::{Graph, Vertex};
use crate::ids;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    FourK1,
    C4,
    C5,
    C6,
    C7,
    /// C5 plus a true twin of one cycle vertex. Template order: the cycle is
    /// `0-1-2-3-4-0` and vertex 5 is the twin of 2 (adjacent to 1, 2, 3).
    C5Twin,
}

const C5_TWIN_EDGES: [(usize, usize); 8] = [(0, 1), (0, 4), (1, 2), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5)];

impl Pattern {
    pub const ALL: [Pattern; 6] = [
        Pattern::FourK1,
        Pattern::C4,
        Pattern::C5,
        Pattern::C6,
        Pattern::C7,
        Pattern::C5Twin,
    ];

    pub const FORBIDDEN: [Pattern; 3] = [Pattern::FourK1, Pattern::C4, Pattern::C6];

    pub fn order(self) -> usize {
        match self {
            Pattern::FourK1 | Pattern::C4 => 4,
            Pattern::C5 => 5,
            Pattern::C6 | Pattern::C5Twin => 6,
            Pattern::C7 => 7,
        }
    }

    pub fn cycle_length(self) -> Option<usize> {
        match self {
            Pattern::C4 => Some(4),
            Pattern::C5 => Some(5),
            Pattern::C6 => Some(6),
            Pattern::C7 => Some(7),
            _ => None,
        }
    }

    pub fn template_edges(self) -> Vec<(usize, usize)> {
        match self {
            Pattern::FourK1 => Vec::new(),
            Pattern::C5Twin => C5_TWIN_EDGES.to_vec(),
            p => {
                let k = p.order();
                (0..k).map(|i| (i, (i + 1) % k)).collect()
            }
        }
    }

    pub fn template(self) -> Graph {
        Graph::new(self.order(), &self.template_edges()).expect("templates are simple graphs")
    }

    /// One template position per automorphism orbit.
    fn orbit_representatives(self) -> &'static [usize] {
        match self {
            Pattern::C5Twin => &[0, 1, 2],
            _ => &[0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::FourK1 => "4K1",
            Pattern::C4 => "C4",
            Pattern::C5 => "C5",
            Pattern::C6 => "C6",
            Pattern::C7 => "C7",
            Pattern::C5Twin => "C5-twin",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Vertices of `G` realizing a pattern, position `i` playing template
/// vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Embedding {
    pub pattern: Pattern,
    #[serde(with = "ids::one_based_vec")]
    pub vertices: Vec<Vertex>,
}

impl Embedding {
    /// Checks distinctness, range, and every template edge and non-edge.
    pub fn verify(&self, g: &Graph) -> bool {
        let k = self.pattern.order();
        let vs = &self.vertices;
        if vs.len() != k || vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let t = self.pattern.template();
        for i in 0..k {
            for j in i + 1..k {
                if vs[i] == vs[j] || g.has_edge(vs[i], vs[j]) != t.has_edge(i, j) {
                    return false;
                }
            }
        }
        true
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Embedding {
        Embedding { pattern: self.pattern, vertices: self.vertices.iter().map(|&v| f(v)).collect() }
    }
}

struct Search<'a> {
    g: &'a Graph,
    pattern: Pattern,
    t: Vec<Vec<bool>>,
    /// For each position, the earliest position it must be adjacent to.
    anchor: Vec<Option<usize>>,
    fixed: Option<(usize, Vertex)>,
    break_symmetry: bool,
    tuple: Vec<Vertex>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, pattern: Pattern, fixed: Option<(usize, Vertex)>) -> Self {
        let k = pattern.order();
        let mut t = vec![vec![false; k]; k];
        for (a, b) in pattern.template_edges() {
            t[a][b] = true;
            t[b][a] = true;
        }
        let anchor = (0..k).map(|p| (0..p).find(|&q| t[q][p])).collect();
        Search {
            g,
            pattern,
            t,
            anchor,
            fixed,
            break_symmetry: fixed.is_none(),
            tuple: Vec::with_capacity(k),
            used: vec![false; g.n()],
        }
    }

    fn symmetry_ok(&self, p: usize, v: Vertex) -> bool {
        if !self.break_symmetry {
            return true;
        }
        let tu = &self.tuple;
        match self.pattern {
            Pattern::FourK1 => p == 0 || v > tu[p - 1],
            Pattern::C5Twin => match p {
                3 => v > tu[1],
                5 => v > tu[2],
                _ => true,
            },
            _ => {
                let k = self.pattern.order();
                (p == 0 || v > tu[0]) && (p + 1 != k || v > tu[1])
            }
        }
    }

    fn consistent(&self, p: usize, v: Vertex) -> bool {
        !self.used[v]
            && self.symmetry_ok(p, v)
            && self.tuple.iter().enumerate().all(|(q, &u)| self.g.has_edge(u, v) == self.t[q][p])
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>) -> ControlFlow<()> {
        let p = self.tuple.len();
        if p == self.pattern.order() {
            return visit(&self.tuple);
        }
        let g = self.g;
        let candidates: Vec<Vertex> = match (self.fixed, self.anchor[p]) {
            (Some((fp, fv)), _) if fp == p => vec![fv],
            (_, Some(q)) => g.neighbors(self.tuple[q]).to_vec(),
            (_, None) => g.vertices().collect(),
        };
        for v in candidates {
            if self.consistent(p, v) {
                self.tuple.push(v);
                self.used[v] = true;
                let flow = self.run(visit);
                self.used[v] = false;
                self.tuple.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Visits every induced copy of `p` once per automorphism class, in
/// lexicographic order of the tuples.
pub fn for_each_induced(
    g: &Graph,
    p: Pattern,
    mut visit: impl FnMut(&Embedding) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut s = Search::new(g, p, None);
    s.run(&mut |vs| visit(&Embedding { pattern: p, vertices: vs.to_vec() }))
}

/// First induced copy of `p` in lexicographic tuple order.
pub fn find_induced(g: &Graph, p: Pattern) -> Option<Embedding> {
    nth_induced(g, p, 0)
}

pub fn nth_induced(g: &Graph, p: Pattern, index: usize) -> Option<Embedding> {
    let mut seen = 0;
    let mut found = None;
    let _ = for_each_induced(g, p, |e| {
        if seen == index {
            found = Some(e.clone());
            return ControlFlow::Break(());
        }
        seen += 1;
        ControlFlow::Continue(())
    });
    found
}

pub fn count_induced(g: &Graph, p: Pattern) -> usize {
    let mut n = 0;
    let _ = for_each_induced(g, p, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

/// An induced copy of `p` that uses vertex `v`. Used for incremental
/// membership checks: if `G - v` is free of `p`, so is `G` unless this
/// returns a copy.
pub fn find_induced_through(g: &Graph, p: Pattern, v: Vertex) -> Option<Embedding> {
    for &pos in p.orbit_representatives() {
        let mut s = Search::new(g, p, Some((pos, v)));
        let mut found = None;
        let _ = s.run(&mut |vs| {
            found = Some(vs.to_vec());
            ControlFlow::Break(())
        });
        if let Some(vertices) = found {
            return Some(Embedding { pattern: p, vertices });
        }
    }
    None
}

/// Class membership for (4K1, C4, C6)-free graphs, plus the pivotal odd
/// holes and the C5-twin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub member: bool,
    pub c5_present: bool,
    pub c7_present: bool,
    pub c5twin_present: bool,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Witnesses {
    pub four_k1: Option<Embedding>,
    pub c4: Option<Embedding>,
    pub c6: Option<Embedding>,
    pub c5: Option<Embedding>,
    pub c7: Option<Embedding>,
    pub c5_twin: Option<Embedding>,
}

impl ClassReport {
    pub fn witness(&self, p: Pattern) -> Option<&Embedding> {
        let w = &self.witnesses;
        match p {
            Pattern::FourK1 => w.four_k1.as_ref(),
            Pattern::C4 => w.c4.as_ref(),
            Pattern::C5 => w.c5.as_ref(),
            Pattern::C6 => w.c6.as_ref(),
            Pattern::C7 => w.c7.as_ref(),
            Pattern::C5Twin => w.c5_twin.as_ref(),
        }
    }

    /// First forbidden witness in the order 4K1, C4, C6.
    pub fn forbidden_witness(&self) -> Option<&Embedding> {
        Pattern::FORBIDDEN.iter().find_map(|&p| self.witness(p))
    }

    /// No C5 and no C7 in a member graph: perfect, since longer odd holes
    /// contain 4K1 and anti-holes of length six or more contain C4.
    pub fn perfect_in_class(&self) -> bool {
        self.member && !self.c5_present && !self.c7_present
    }
}

pub fn class_report(g: &Graph) -> ClassReport {
    let witnesses = Witnesses {
        four_k1: find_induced(g, Pattern::FourK1),
        c4: find_induced(g, Pattern::C4),
        c6: find_induced(g, Pattern::C6),
        c5: find_induced(g, Pattern::C5),
        c7: find_induced(g, Pattern::C7),
        c5_twin: find_induced(g, Pattern::C5Twin),
    };
    ClassReport {
        member: witnesses.four_k1.is_none() && witnesses.c4.is_none() && witnesses.c6.is_none(),
        c5_present: witnesses.c5.is_some(),
        c7_present: witnesses.c7.is_some(),
        c5twin_present: witnesses.c5_twin.is_some(),
        witnesses,
    }
}

/// Membership only; stops at the first forbidden pattern.
pub fn is_member(g: &Graph) -> bool {
    forbidden_witness(g).is_none()
}

pub fn forbidden_witness(g: &Graph) -> Option<Embedding> {
    Pattern::FORBIDDEN.iter().find_map(|&p| find_induced(g, p))
}
