//! Clique-width expressions.
//!
//! An expression is a postfix program over a stack of labelled graphs:
//! `Create` pushes a single labelled vertex, `Union` pops two entries and
//! pushes their disjoint union, `Join` and `Relabel` rewrite the top entry.
//! A well-formed program leaves exactly one entry.
//!
//! Text form, one op per line, vertex ids 1-based:
//!
//! ```text
//! v <vertex> <label>
//! u
//! j <label> <label>
//! r <from> <to>
//! ```
//!
//! Lines starting with `c` and blank lines are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{non_adjacent_pair, Graph, UniformStatus, Vertex, VertexSet};
use crate::uniform::{NearUniformPartition, PartitionError};

pub type Label = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CwdOp {
    Create { vertex: Vertex, label: Label },
    Union,
    Join { a: Label, b: Label },
    Relabel { from: Label, to: Label },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CwdExpression {
    ops: Vec<CwdOp>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CwdError {
    #[error("vertex {0} is created twice")]
    DuplicateVertex(Vertex),
    #[error("join of label {0} with itself")]
    SelfJoin(Label),
    #[error("op {0} needs more stack entries than are available")]
    StackUnderflow(usize),
    #[error("expression leaves {0} entries on the stack")]
    Unbalanced(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl CwdExpression {
    pub fn from_ops(ops: Vec<CwdOp>) -> CwdExpression {
        CwdExpression { ops }
    }

    pub fn ops(&self) -> &[CwdOp] {
        &self.ops
    }

    pub fn create(vertex: Vertex, label: Label) -> CwdExpression {
        CwdExpression { ops: vec![CwdOp::Create { vertex, label }] }
    }

    pub fn union(mut self, other: CwdExpression) -> CwdExpression {
        self.ops.extend(other.ops);
        self.ops.push(CwdOp::Union);
        self
    }

    pub fn join(mut self, a: Label, b: Label) -> CwdExpression {
        self.ops.push(CwdOp::Join { a, b });
        self
    }

    pub fn relabel(mut self, from: Label, to: Label) -> CwdExpression {
        self.ops.push(CwdOp::Relabel { from, to });
        self
    }

    /// Renames every created vertex through `f`.
    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> CwdExpression {
        let ops = self
            .ops
            .iter()
            .map(|op| match *op {
                CwdOp::Create { vertex, label } => CwdOp::Create { vertex: f(vertex), label },
                other => other,
            })
            .collect();
        CwdExpression { ops }
    }

    /// Distinct labels mentioned anywhere in the expression.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        for op in &self.ops {
            match *op {
                CwdOp::Create { label, .. } => {
                    out.insert(label);
                }
                CwdOp::Union => {}
                CwdOp::Join { a, b } => {
                    out.insert(a);
                    out.insert(b);
                }
                CwdOp::Relabel { from, to } => {
                    out.insert(from);
                    out.insert(to);
                }
            }
        }
        out
    }

    pub fn width(&self) -> usize {
        self.labels().len()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<CwdExpression, CwdError> {
        let mut ops = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let err = |message: &str| CwdError::Parse { line: i + 1, message: message.to_string() };
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap();
            let nums: Vec<usize> = parts
                .map(|p| p.parse::<usize>().map_err(|_| err(&format!("bad number {p:?}"))))
                .collect::<Result<_, _>>()?;
            let op = match (tag, nums.as_slice()) {
                ("v", &[v, label]) if v >= 1 => CwdOp::Create { vertex: v - 1, label },
                ("v", &[0, _]) => return Err(err("vertex ids start at 1")),
                ("u", &[]) => CwdOp::Union,
                ("j", &[a, b]) => CwdOp::Join { a, b },
                ("r", &[from, to]) => CwdOp::Relabel { from, to },
                _ => return Err(err(&format!("unrecognised line {line:?}"))),
            };
            ops.push(op);
        }
        Ok(CwdExpression { ops })
    }
}

impl fmt::Display for CwdExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            match *op {
                CwdOp::Create { vertex, label } => writeln!(f, "v {} {label}", vertex + 1)?,
                CwdOp::Union => writeln!(f, "u")?,
                CwdOp::Join { a, b } => writeln!(f, "j {a} {b}")?,
                CwdOp::Relabel { from, to } => writeln!(f, "r {from} {to}")?,
            }
        }
        Ok(())
    }
}

/// Result of evaluating an expression: vertices keep their ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledGraph {
    labels: BTreeMap<Vertex, Label>,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl LabeledGraph {
    pub fn label(&self, v: Vertex) -> Option<Label> {
        self.labels.get(&v).copied()
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, Label> {
        &self.labels
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.labels.keys().copied().collect()
    }

    pub fn edges(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Literal equality with `g[s]`: same vertex ids, same edges.
    pub fn equals_induced(&self, g: &Graph, s: &VertexSet) -> bool {
        if self.vertex_set() != *s || s.iter().any(|v| v >= g.n()) {
            return false;
        }
        let expected = s
            .iter()
            .flat_map(|u| g.neighbors(u).iter().filter(move |&&v| u < v && s.contains(v)).map(move |&v| (u, v)))
            .count();
        expected == self.edges.len() && self.edges.iter().all(|&(u, v)| g.has_edge(u, v))
    }

    /// Literal equality with `g`.
    pub fn equals(&self, g: &Graph) -> bool {
        self.equals_induced(g, &g.all_vertices())
    }

    /// Vertices must be exactly `0..n`.
    pub fn to_graph(&self) -> Option<Graph> {
        let n = self.labels.len();
        if self.labels.keys().enumerate().any(|(i, &v)| i != v) {
            return None;
        }
        let e: Vec<_> = self.edges.iter().copied().collect();
        Graph::new(n, &e).ok()
    }
}

pub fn evaluate(e: &CwdExpression) -> Result<LabeledGraph, CwdError> {
    let mut stack: Vec<LabeledGraph> = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, op) in e.ops.iter().enumerate() {
        match *op {
            CwdOp::Create { vertex, label } => {
                if !seen.insert(vertex) {
                    return Err(CwdError::DuplicateVertex(vertex));
                }
                let mut g = LabeledGraph::default();
                g.labels.insert(vertex, label);
                stack.push(g);
            }
            CwdOp::Union => {
                if stack.len() < 2 {
                    return Err(CwdError::StackUnderflow(i));
                }
                let right = stack.pop().unwrap();
                let left = stack.last_mut().unwrap();
                left.labels.extend(right.labels);
                left.edges.extend(right.edges);
            }
            CwdOp::Join { a, b } => {
                if a == b {
                    return Err(CwdError::SelfJoin(a));
                }
                let top = stack.last_mut().ok_or(CwdError::StackUnderflow(i))?;
                let with = |l: Label| top.labels.iter().filter(move |&(_, &x)| x == l).map(|(&v, _)| v);
                let new: Vec<_> = with(a).flat_map(|u| with(b).map(move |v| (u.min(v), u.max(v)))).collect();
                top.edges.extend(new);
            }
            CwdOp::Relabel { from, to } => {
                let top = stack.last_mut().ok_or(CwdError::StackUnderflow(i))?;
                for l in top.labels.values_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
            }
        }
    }
    match stack.len() {
        1 => Ok(stack.pop().unwrap()),
        k => Err(CwdError::Unbalanced(k)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("sets overlap at vertex {0}")]
    Overlap(Vertex),
    #[error("{u} and {v} are non-adjacent inside one side")]
    NotClique { u: Vertex, v: Vertex },
    #[error("induced C4 {a}-{b}-{b_prime}-{a_prime}")]
    C4Witness { a: Vertex, b: Vertex, b_prime: Vertex, a_prime: Vertex },
}

impl ChainError {
    /// The four witness vertices in cyclic order.
    pub fn cycle(&self) -> Option<[Vertex; 4]> {
        match *self {
            ChainError::C4Witness { a, b, b_prime, a_prime } => Some([a, b, b_prime, a_prime]),
            _ => None,
        }
    }
}

/// Orders `a` so that the neighbourhoods in `b` increase under inclusion.
/// Ties go by vertex id.
pub fn chain_order(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Vec<Vertex>, ChainError> {
    if let Some(v) = a.intersection(b).first() {
        return Err(ChainError::Overlap(v));
    }
    for s in [a, b] {
        if let Some((u, v)) = non_adjacent_pair(g, s) {
            return Err(ChainError::NotClique { u, v });
        }
    }
    let nb = |v: Vertex| -> VertexSet { b.iter().filter(|&u| g.has_edge(u, v)).collect() };
    let mut order: Vec<(usize, Vertex, VertexSet)> = a.iter().map(|v| (nb(v).len(), v, nb(v))).collect();
    order.sort_by_key(|&(k, v, _)| (k, v));
    for w in order.windows(2) {
        let (_, lo, ref n_lo) = w[0];
        let (_, hi, ref n_hi) = w[1];
        if let Some(x) = n_lo.difference(n_hi).first() {
            let y = n_hi.difference(n_lo).first().expect("larger side has a private neighbour");
            return Err(ChainError::C4Witness { a: lo, b: x, b_prime: y, a_prime: hi });
        }
    }
    Ok(order.into_iter().map(|(_, v, _)| v).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("invalid partition: {0}")]
    InvalidPartition(#[from] PartitionError),
    #[error("partition has no sets")]
    EmptyPartition,
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("expression does not evaluate to the graph minus the added vertices")]
    EvaluationMismatch,
    #[error(transparent)]
    Expression(#[from] CwdError),
}

/// A clique on `set` with every vertex labelled `label`.
fn clique_expr(set: &VertexSet, label: Label, temp: Label) -> CwdExpression {
    let mut it = set.iter();
    let mut e = CwdExpression::create(it.next().expect("nonempty part"), label);
    for v in it {
        e = e.union(CwdExpression::create(v, temp)).join(temp, label).relabel(temp, label);
    }
    e
}

/// Adds `v` with the temporary label, joins it to `targets`, then moves it
/// to `label`.
fn push_vertex(e: Option<CwdExpression>, v: Vertex, label: Label, temp: Label, targets: &[Label]) -> CwdExpression {
    let Some(mut e) = e else {
        return CwdExpression::create(v, label);
    };
    e = e.union(CwdExpression::create(v, temp));
    for &t in targets {
        e = e.join(temp, t);
    }
    e.relabel(temp, label)
}

/// Builds two cliques with nested cross neighbourhoods in one pass.
fn pair_expr(g: &Graph, a: &VertexSet, b: &VertexSet, la: Label, lb: Label, temp: Label) -> Result<CwdExpression, ChainError> {
    let order = chain_order(g, a, b)?;
    let first_hit = |v: Vertex| order.iter().position(|&x| g.has_edge(x, v));
    let mut e: Option<CwdExpression> = None;
    for v in b.iter().filter(|&v| first_hit(v).is_none()) {
        e = Some(push_vertex(e, v, lb, temp, &[lb]));
    }
    for j in (0..order.len()).rev() {
        e = Some(push_vertex(e, order[j], la, temp, &[la]));
        for v in b.iter().filter(|&v| first_hit(v) == Some(j)) {
            e = Some(push_vertex(e, v, lb, temp, &[lb, la]));
        }
    }
    Ok(e.expect("nonempty parts"))
}

/// Expression for `g` restricted to the partition's vertices. Set `i` ends
/// up labelled `i + 1`; one extra label serves as scratch, so the width is
/// at most `k + 1`.
pub fn build_from_near_uniform(g: &Graph, p: &NearUniformPartition) -> Result<CwdExpression, BuildError> {
    p.verify(g)?;
    let k = p.k();
    if k == 0 {
        return Err(BuildError::EmptyPartition);
    }
    let temp = k + 1;
    let mut pieces = Vec::new();
    for i in 0..k {
        match p.nonuniform_pair {
            Some((x, y)) if i == x => {
                pieces.push(pair_expr(g, &p.sets[x].vertices, &p.sets[y].vertices, x + 1, y + 1, temp)?)
            }
            Some((_, y)) if i == y => {}
            _ => pieces.push(clique_expr(&p.sets[i].vertices, i + 1, temp)),
        }
    }
    let mut it = pieces.into_iter();
    let mut e = it.next().unwrap();
    for piece in it {
        e = e.union(piece);
    }
    for i in 0..k {
        for j in i + 1..k {
            if p.status(i, j) == UniformStatus::Join {
                e = e.join(i + 1, j + 1);
            }
        }
    }
    Ok(e)
}

/// Extends an expression for `g - s` to one for `g` by splitting every
/// label according to its neighbourhood in `s`.
pub fn add_back_vertices(e: &CwdExpression, g: &Graph, s: &VertexSet) -> Result<CwdExpression, BuildError> {
    g.check_set(s).map_err(PartitionError::from)?;
    let rest = g.all_vertices().difference(s);
    let base = evaluate(e)?;
    if !base.equals_induced(g, &rest) {
        return Err(BuildError::EvaluationMismatch);
    }
    if s.is_empty() {
        return Ok(e.clone());
    }
    let trace = |v: Vertex| -> VertexSet { s.iter().filter(|&u| g.has_edge(u, v)).collect() };
    let traces: Vec<VertexSet> = rest.iter().map(trace).collect::<BTreeSet<_>>().into_iter().collect();
    let labels: Vec<Label> = e.labels().into_iter().collect();
    let t = traces.len().max(1);
    let enc = |l: Label, ti: usize| labels.binary_search(&l).unwrap() * t + ti + 1;
    let tidx = |v: Vertex| traces.binary_search(&trace(v)).unwrap();
    let mut ops = Vec::new();
    for op in e.ops() {
        match *op {
            CwdOp::Create { vertex, label } => ops.push(CwdOp::Create { vertex, label: enc(label, tidx(vertex)) }),
            CwdOp::Union => ops.push(CwdOp::Union),
            CwdOp::Join { a, b } => {
                for x in 0..traces.len() {
                    for y in 0..traces.len() {
                        ops.push(CwdOp::Join { a: enc(a, x), b: enc(b, y) });
                    }
                }
            }
            CwdOp::Relabel { from, to } => {
                for x in 0..traces.len() {
                    ops.push(CwdOp::Relabel { from: enc(from, x), to: enc(to, x) });
                }
            }
        }
    }
    // labels present once g - s is built
    let live: BTreeSet<(Label, usize)> = base.labels().iter().map(|(&v, &l)| (l, tidx(v))).collect();
    let mut out = CwdExpression::from_ops(ops);
    let s_label = |i: usize| labels.len() * t + i + 1;
    for (i, v) in s.iter().enumerate() {
        out = out.union(CwdExpression::create(v, s_label(i)));
        for &(l, x) in &live {
            if traces[x].contains(v) {
                out = out.join(s_label(i), enc(l, x));
            }
        }
        for (j, u) in s.iter().enumerate().take(i) {
            if g.has_edge(u, v) {
                out = out.join(s_label(i), s_label(j));
            }
        }
    }
    Ok(out)
}
