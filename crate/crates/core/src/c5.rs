//! Partition of the vertices around an induced C5, its audit, and the
//! case analysis for (4K1, C4, C6, C5-twin)-free graphs containing a C5.
//!
//! With hole positions `0..5` (mod 5): `F[i]` sees only `i`, `T[i]` sees
//! `{i, i+1}`, `X[i]` sees `{i, i+1, i+2}`, `R` sees nothing and `W` sees
//! the whole hole.

use serde::Serialize;
use thiserror::Error;

use crate::audit::{AuditReport, Claim, Named};
use crate::decomp::find_clique_cutset;
use crate::detect::{self, Embedding, Pattern};
use crate::graph::{cross_status, is_clique, Graph, UniformStatus, Vertex, VertexSet};
use crate::hole::{arc_mask, HoleEmbedding, Unclassifiable};
use crate::uniform::{NamedSet, NearUniformPartition};

const L: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum C5Error {
    #[error("expected a hole of length 5, got {0}")]
    NotC5(usize),
    #[error(transparent)]
    Unclassifiable(#[from] Unclassifiable),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C5Partition {
    pub hole: HoleEmbedding,
    pub f: [VertexSet; L],
    pub t: [VertexSet; L],
    pub x: [VertexSet; L],
    pub r: VertexSet,
    pub w: VertexSet,
}

pub fn build_c5_partition(g: &Graph, hole: &HoleEmbedding) -> Result<C5Partition, C5Error> {
    if hole.len() != L {
        return Err(C5Error::NotC5(hole.len()));
    }
    let mut f: [Vec<Vertex>; L] = Default::default();
    let mut t: [Vec<Vertex>; L] = Default::default();
    let mut x: [Vec<Vertex>; L] = Default::default();
    let (mut r, mut w) = (Vec::new(), Vec::new());
    let on_hole = hole.vertex_set();
    for v in g.vertices().filter(|&v| !on_hole.contains(v)) {
        let mask = hole.trace(g, v);
        let slot = match mask.count_ones() {
            0 => Some(&mut r),
            1 => Some(&mut f[mask.trailing_zeros() as usize]),
            2 => (0..L).find(|&i| mask == arc_mask(L, i, 2)).map(|i| &mut t[i]),
            3 => (0..L).find(|&i| mask == arc_mask(L, i, 3)).map(|i| &mut x[i]),
            5 => Some(&mut w),
            _ => None,
        };
        match slot {
            Some(s) => s.push(v),
            None => return Err(Unclassifiable::new(g, hole, v).into()),
        }
    }
    Ok(C5Partition {
        hole: hole.clone(),
        f: f.map(VertexSet::from),
        t: t.map(VertexSet::from),
        x: x.map(VertexSet::from),
        r: VertexSet::from(r),
        w: VertexSet::from(w),
    })
}

impl C5Partition {
    fn nf(&self, i: usize) -> Named<'_> {
        Named { name: format!("F{}", i % L + 1), set: &self.f[i % L] }
    }

    fn nt(&self, i: usize) -> Named<'_> {
        Named { name: format!("T{}", i % L + 1), set: &self.t[i % L] }
    }

    fn nx(&self, i: usize) -> Named<'_> {
        Named { name: format!("X{}", i % L + 1), set: &self.x[i % L] }
    }

    /// Union of all `T_i`.
    pub fn t_all(&self) -> VertexSet {
        self.t.iter().flat_map(|s| s.iter()).collect()
    }

    pub fn f_all(&self) -> VertexSet {
        self.f.iter().flat_map(|s| s.iter()).collect()
    }

    /// For the first `i` with `F_i`, `T_i` and `T_{i+4}` all nonempty, the
    /// 7-cycle `(t_{i+4}, f, t_i, i+1, i+2, i+3, i+4)`. It is induced
    /// whenever the audit claims hold.
    pub fn c7_from_f_and_flanking_t(&self) -> Option<Vec<Vertex>> {
        (0..L).find_map(|i| {
            let f = self.f[i].first()?;
            let t_i = self.t[i].first()?;
            let t_prev = self.t[(i + 4) % L].first()?;
            let h = &self.hole;
            Some(vec![t_prev, f, t_i, h.at(i + 1), h.at(i + 2), h.at(i + 3), h.at(i + 4)])
        })
    }
}

/// Checks claims (a) through (i). `F_i` against `X_i`, `X_{i+3}`,
/// `X_{i+4}` may legitimately be mixed and is not checked.
pub fn audit_c5(g: &Graph, p: &C5Partition) -> AuditReport {
    let mut entries = Vec::new();
    let r = Named { name: "R".into(), set: &p.r };
    let w = Named { name: "W".into(), set: &p.w };

    let mut c = Claim::new(g, "a", "every F_i, T_i, X_i, R and W is a clique");
    for i in 0..L {
        c.clique(&p.nf(i));
        c.clique(&p.nt(i));
        c.clique(&p.nx(i));
    }
    c.clique(&r);
    c.clique(&w);
    entries.push(c.finish());

    let mut c = Claim::new(g, "b", "R joined to every F_i and T_i");
    for i in 0..L {
        c.join(&r, &p.nf(i));
        c.join(&r, &p.nt(i));
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "c", "at most one F_i is nonempty");
    for i in 0..L {
        for j in i + 1..L {
            c.not_all_nonempty(&[&p.nf(i), &p.nf(j)]);
        }
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "d", "F_i joined to T_i, T_{i+2}, T_{i+4}");
    for i in 0..L {
        for d in [0, 2, 4] {
            c.join(&p.nf(i), &p.nt(i + d));
        }
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "e", "F_i co-joined to T_{i+1}, T_{i+3}");
    for i in 0..L {
        for d in [1, 3] {
            c.cojoin(&p.nf(i), &p.nt(i + d));
        }
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "f", "F_i co-joined to X_{i+1}");
    for i in 0..L {
        c.cojoin(&p.nf(i), &p.nx(i + 1));
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "g", "T_i co-joined to T_j for j != i");
    for i in 0..L {
        for j in i + 1..L {
            c.cojoin(&p.nt(i), &p.nt(j));
        }
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "h", "T_i co-joined to X_{i+2}");
    for i in 0..L {
        c.cojoin(&p.nt(i), &p.nx(i + 2));
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "i", "X_i co-joined to X_{i+2}");
    for i in 0..L {
        c.cojoin(&p.nx(i), &p.nx(i + 2));
    }
    entries.push(c.finish());

    AuditReport { hole_length: L, entries }
}

/// The four possible shapes of a (4K1, C4, C6, C5-twin)-free graph that
/// contains a C5.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum C5Outcome {
    /// Case (i).
    CliqueCutset { cutset: VertexSet, v1: VertexSet, v2: VertexSet },
    /// Case (ii).
    HasC7 { hole: HoleEmbedding },
    /// Case (iii): `G - removed` has a near-uniform partition, where
    /// `removed` is the hole plus the single vertex of `T_{rotation+2}`.
    NearUniformConstruction {
        hole: HoleEmbedding,
        rotation: usize,
        removed: VertexSet,
        partition: NearUniformPartition,
    },
    /// Case (iv): `G` is the join of `clique` and the hole.
    JoinCliqueC5 { clique: VertexSet, hole: HoleEmbedding },
}

impl C5Outcome {
    pub fn case_name(&self) -> &'static str {
        match self {
            C5Outcome::CliqueCutset { .. } => "i",
            C5Outcome::HasC7 { .. } => "ii",
            C5Outcome::NearUniformConstruction { .. } => "iii",
            C5Outcome::JoinCliqueC5 { .. } => "iv",
        }
    }

    /// Renames every vertex through `f`.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> C5Outcome {
        let set = |s: &VertexSet| -> VertexSet { s.iter().map(&f).collect() };
        match self {
            C5Outcome::CliqueCutset { cutset, v1, v2 } => {
                C5Outcome::CliqueCutset { cutset: set(cutset), v1: set(v1), v2: set(v2) }
            }
            C5Outcome::HasC7 { hole } => C5Outcome::HasC7 { hole: hole.map(&f) },
            C5Outcome::NearUniformConstruction { hole, rotation, removed, partition } => {
                C5Outcome::NearUniformConstruction {
                    hole: hole.map(&f),
                    rotation: *rotation,
                    removed: set(removed),
                    partition: partition.map(&f),
                }
            }
            C5Outcome::JoinCliqueC5 { clique, hole } => {
                C5Outcome::JoinCliqueC5 { clique: set(clique), hole: hole.map(&f) }
            }
        }
    }

    /// Re-checks the carried witness against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let all = g.all_vertices();
        match self {
            C5Outcome::CliqueCutset { cutset, v1, v2 } => {
                let a = v1.difference(cutset);
                let b = v2.difference(cutset);
                is_clique(g, cutset).unwrap_or(false)
                    && v1.union(v2) == all
                    && v1.intersection(v2) == *cutset
                    && !a.is_empty()
                    && !b.is_empty()
                    && cross_status(g, &a, &b) == UniformStatus::Cojoin
            }
            C5Outcome::HasC7 { hole } => {
                Embedding { pattern: Pattern::C7, vertices: hole.vertices().to_vec() }.verify(g)
            }
            C5Outcome::NearUniformConstruction { hole, removed, partition, .. } => {
                let universe = partition.universe();
                HoleEmbedding::new(g, hole.vertices().to_vec()).is_ok()
                    && hole.vertex_set().is_subset(removed)
                    && removed.len() <= 6
                    && partition.verify(g).is_ok()
                    && universe.is_disjoint(removed)
                    && universe.union(removed) == all
            }
            C5Outcome::JoinCliqueC5 { clique, hole } => {
                let hs = hole.vertex_set();
                HoleEmbedding::new(g, hole.vertices().to_vec()).is_ok()
                    && is_clique(g, clique).unwrap_or(false)
                    && (clique.is_empty() || cross_status(g, clique, &hs) == UniformStatus::Join)
                    && clique.union(&hs) == all
                    && clique.is_disjoint(&hs)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("graph contains no induced C5")]
    NoC5,
    #[error("input is not (4K1, C4, C6, C5-twin)-free: {0:?}")]
    PreconditionViolation(Option<Embedding>),
    /// The graph satisfies the hypotheses but none of the four cases could
    /// be certified: a counterexample candidate.
    #[error("no case applies: {0}")]
    TheoremViolation(String),
}

/// Decides which case applies, in the order (i), (ii), (iv), (iii).
pub fn classify_atom_with_c5(g: &Graph) -> Result<C5Outcome, ClassifyError> {
    if let Some(w) = detect::forbidden_witness(g) {
        return Err(ClassifyError::PreconditionViolation(Some(w)));
    }
    if let Some(w) = detect::find_induced(g, Pattern::C5Twin) {
        return Err(ClassifyError::PreconditionViolation(Some(w)));
    }
    let hole = match detect::find_induced(g, Pattern::C5) {
        Some(e) => HoleEmbedding::from_embedding(g, &e).expect("detected C5 is a hole"),
        None => return Err(ClassifyError::NoC5),
    };

    if let Some(split) = find_clique_cutset(g) {
        return Ok(C5Outcome::CliqueCutset { cutset: split.cutset, v1: split.v1, v2: split.v2 });
    }

    let p = build_c5_partition(g, &hole).map_err(|e| match e {
        C5Error::Unclassifiable(u) => ClassifyError::PreconditionViolation(u.witness),
        C5Error::NotC5(_) => unreachable!("hole has length 5"),
    })?;

    if let Some(tuple) = p.c7_from_f_and_flanking_t() {
        return match HoleEmbedding::new(g, tuple.clone()) {
            Ok(h7) => Ok(C5Outcome::HasC7 { hole: h7 }),
            Err(_) => Err(ClassifyError::TheoremViolation(format!("{tuple:?} is not an induced C7"))),
        };
    }
    if let Some(e) = detect::find_induced(g, Pattern::C7) {
        let hole = HoleEmbedding::from_embedding(g, &e).expect("detected C7 is a hole");
        return Ok(C5Outcome::HasC7 { hole });
    }

    if p.x.iter().any(|s| !s.is_empty()) {
        // a 3-vertex is a twin of the middle of its arc
        return Err(ClassifyError::TheoremViolation("3-vertex present without a C5-twin".into()));
    }
    if !p.r.is_empty() {
        return Err(ClassifyError::TheoremViolation(format!("R = {:?} is nonempty", p.r)));
    }

    let nonempty_f: Vec<usize> = (0..L).filter(|&i| !p.f[i].is_empty()).collect();
    let t_all = p.t_all();
    match nonempty_f.as_slice() {
        [] if t_all.is_empty() => Ok(C5Outcome::JoinCliqueC5 { clique: p.w.clone(), hole }),
        [] => Err(ClassifyError::TheoremViolation(
            "F empty and T nonempty, yet no clique cutset".into(),
        )),
        &[r] => {
            let t = |d: usize| &p.t[(r + d) % L];
            if !t(1).is_empty() || !t(3).is_empty() {
                return Err(ClassifyError::TheoremViolation(format!(
                    "T adjacent to F{} is nonempty, yet no clique cutset",
                    r + 1
                )));
            }
            if t(2).is_empty() {
                return Err(ClassifyError::TheoremViolation(
                    "T opposite F empty, yet neither clique cutset nor C7".into(),
                ));
            }
            if t(2).len() != 1 || !t(0).is_empty() || !t(4).is_empty() {
                return Err(ClassifyError::TheoremViolation(
                    "opposite T larger than one or flanked, without a C5-twin".into(),
                ));
            }
            let removed = hole.vertex_set().union(t(2));
            let mut sets = Vec::new();
            if !p.w.is_empty() {
                sets.push(NamedSet { name: "W".into(), vertices: p.w.clone() });
            }
            sets.push(NamedSet { name: format!("F{}", r + 1), vertices: p.f[r].clone() });
            let partition = NearUniformPartition::new(g, sets)
                .map_err(|e| ClassifyError::TheoremViolation(format!("{{W, F}} is not near-uniform: {e}")))?;
            Ok(C5Outcome::NearUniformConstruction { hole, rotation: r, removed, partition })
        }
        _ => Err(ClassifyError::TheoremViolation("more than one F_i nonempty".into())),
    }
}
