//! Structure-driven coloring of graphs in the class.
//!
//! The graph is split into atoms along clique cutsets. Each atom is colored
//! on its own, after its structure has been certified (uniform partition and
//! clique-width expression, or one of the C5 cases), and the colorings are
//! glued back together along the cutsets.

use serde::Serialize;
use thiserror::Error;

use crate::c5::{classify_atom_with_c5, C5Outcome};
use crate::c7::c7_uniform_sets;
use crate::color::{exact_chromatic, max_clique, Coloring};
use crate::cwd::{add_back_vertices, build_from_near_uniform, evaluate, CwdExpression};
use crate::decomp::{decompose, merge_colorings, DecompTree, MergeError};
use crate::detect::{class_report, Pattern};
use crate::graph::{induced_subgraph, Graph, Vertex, VertexSet};
use crate::hole::HoleEmbedding;
use crate::uniform::NearUniformPartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// No C5 and no C7: the atom is perfect and χ = ω.
    Perfect,
    C7Uniform,
    CaseIii,
    CaseIv,
    /// Colored by the exact oracle with no structural claim.
    FallbackExact,
}

/// What was found and certified for one atom. Vertex ids are those of the
/// input graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomTrace {
    pub vertices: VertexSet,
    pub member: bool,
    pub c5_present: bool,
    pub c7_present: bool,
    pub c5twin_present: bool,
    pub branch: Branch,
    pub clique_number: usize,
    pub colors: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hole: Option<HoleEmbedding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<NearUniformPartition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<C5Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub round_trip: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureTrace {
    pub tree: DecompTree,
    pub atoms: Vec<AtomTrace>,
    pub colors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    /// An atom contradicts the structure theory; carries the atom.
    #[error("structure violation on atom {atom:?}: {reason}")]
    StructureViolation { atom: VertexSet, reason: String },
    #[error(transparent)]
    Merge(#[from] MergeError),
}

pub fn color_in_class(g: &Graph) -> Result<(Coloring, StructureTrace), PipelineError> {
    let tree = decompose(g);
    let mut atoms = Vec::new();
    let mut colorings = Vec::new();
    for atom in tree.atoms() {
        let sub = induced_subgraph(g, atom).expect("atoms lie in g");
        let violation = |reason: String| PipelineError::StructureViolation { atom: atom.clone(), reason };
        let (coloring, mut trace) = color_atom(&sub.graph).map_err(violation)?;
        let up = |v: Vertex| sub.to_parent(v);
        trace.vertices = atom.clone();
        trace.hole = trace.hole.map(|h| h.map(up));
        trace.partition = trace.partition.map(|p| p.map(up));
        trace.outcome = trace.outcome.map(|o| o.map(up));
        trace.expression = trace
            .expression
            .map(|t| CwdExpression::parse(&t).expect("own output parses").map_vertices(up).to_text());
        atoms.push(trace);
        colorings.push(coloring);
    }
    let coloring = merge_colorings(g, &tree, &colorings)?;
    let trace = StructureTrace { colors: coloring.count(), tree, atoms };
    Ok((coloring, trace))
}

fn blank_trace(g: &Graph, branch: Branch) -> AtomTrace {
    AtomTrace {
        vertices: g.all_vertices(),
        member: false,
        c5_present: false,
        c7_present: false,
        c5twin_present: false,
        branch,
        clique_number: max_clique(g).size,
        colors: 0,
        hole: None,
        partition: None,
        outcome: None,
        expression: None,
        width: None,
        round_trip: None,
    }
}

/// Colors one atom (in local ids). Errors describe a structure violation.
fn color_atom(a: &Graph) -> Result<(Coloring, AtomTrace), String> {
    let report = class_report(a);
    let mut t = blank_trace(a, Branch::FallbackExact);
    t.member = report.member;
    t.c5_present = report.c5_present;
    t.c7_present = report.c7_present;
    t.c5twin_present = report.c5twin_present;

    let coloring = if !report.member {
        exact_chromatic(a).1
    } else if report.c7_present {
        t.branch = Branch::C7Uniform;
        let e7 = report.witness(Pattern::C7).expect("c7 witness recorded");
        let hole = HoleEmbedding::from_embedding(a, e7).map_err(|e| e.to_string())?;
        let p = c7_uniform_sets(a, &hole).map_err(|e| format!("C7 partition: {e}"))?;
        let e = build_from_near_uniform(a, &p).map_err(|e| format!("C7 expression: {e}"))?;
        record_expression(&mut t, a, &e)?;
        t.hole = Some(hole);
        t.partition = Some(p);
        exact_chromatic(a).1
    } else if !report.c5_present {
        t.branch = Branch::Perfect;
        let (chi, c) = exact_chromatic(a);
        if chi != t.clique_number {
            return Err(format!("no C5 or C7 but chromatic number {chi} exceeds clique number {}", t.clique_number));
        }
        c
    } else if !report.c5twin_present {
        let out = classify_atom_with_c5(a).map_err(|e| e.to_string())?;
        let c = match &out {
            C5Outcome::JoinCliqueC5 { clique, hole } => {
                t.branch = Branch::CaseIv;
                t.hole = Some(hole.clone());
                join_coloring(a, clique, hole)
            }
            C5Outcome::NearUniformConstruction { hole, removed, partition, .. } => {
                t.branch = Branch::CaseIii;
                let e = build_from_near_uniform(a, partition).map_err(|e| format!("case iii expression: {e}"))?;
                let e = add_back_vertices(&e, a, removed).map_err(|e| format!("case iii add-back: {e}"))?;
                record_expression(&mut t, a, &e)?;
                t.hole = Some(hole.clone());
                exact_chromatic(a).1
            }
            other => return Err(format!("atom classified as case {}", other.case_name())),
        };
        t.outcome = Some(out);
        c
    } else {
        exact_chromatic(a).1
    };
    t.colors = coloring.count();
    Ok((coloring, t))
}

fn record_expression(t: &mut AtomTrace, a: &Graph, e: &CwdExpression) -> Result<(), String> {
    let ok = evaluate(e).map(|lg| lg.equals(a)).unwrap_or(false);
    if !ok {
        return Err("expression does not evaluate to the atom".into());
    }
    t.expression = Some(e.to_text());
    t.width = Some(e.width());
    t.round_trip = Some(true);
    Ok(())
}

/// The clique takes its own colors; the hole takes three more.
fn join_coloring(a: &Graph, clique: &VertexSet, hole: &HoleEmbedding) -> Coloring {
    let k = clique.len();
    let mut colors = vec![0; a.n()];
    for (i, v) in clique.iter().enumerate() {
        colors[v] = i;
    }
    for (i, c) in [0, 1, 0, 1, 2].into_iter().enumerate() {
        colors[hole.at(i)] = k + c;
    }
    Coloring::new(colors)
}

impl StructureTrace {
    /// Re-checks the decomposition and every recorded artifact against `g`.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        self.tree.verify(g)?;
        for t in &self.atoms {
            let sub = induced_subgraph(g, &t.vertices).map_err(|e| e.to_string())?;
            let down = |v: Vertex| t.vertices.index_of(v).expect("artifact inside atom");
            if let Some(h) = &t.hole {
                HoleEmbedding::new(&sub.graph, h.map(down).vertices().to_vec()).map_err(|e| e.to_string())?;
            }
            if let Some(p) = &t.partition {
                p.map(down).verify(&sub.graph).map_err(|e| e.to_string())?;
            }
            if let Some(o) = &t.outcome {
                if !o.map(down).verify(&sub.graph) {
                    return Err(format!("outcome on atom {:?} does not re-verify", t.vertices));
                }
            }
            if let Some(text) = &t.expression {
                let e = CwdExpression::parse(text).map_err(|e| e.to_string())?;
                let lg = evaluate(&e).map_err(|e| e.to_string())?;
                if !lg.equals_induced(g, &t.vertices) || Some(e.width()) != t.width {
                    return Err(format!("expression on atom {:?} does not re-verify", t.vertices));
                }
            }
        }
        Ok(())
    }
}
