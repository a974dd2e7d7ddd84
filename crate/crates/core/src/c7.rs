//! Partition of the vertices around an induced C7 and the audit of the
//! adjacency facts between its sets.
//!
//! With hole positions `0..7` (mod 7), a vertex outside the hole lies in
//!
//! * `X[i]` when its hole neighbours are exactly `{i, i+1, i+2}`,
//! * `Y[i]` for `{i, i+1, i+4}`,
//! * `Z[i]` for `{i, .., i+4}`,
//! * `W` when it sees the whole hole.
//!
//! In a (4K1, C4, C6)-free graph no other trace occurs, every set is a
//! clique and every pair of sets is a join or a co-join. Set names in
//! reports are 1-based (`X1` is `X[0]`), matching the 1-based vertex ids of
//! the external formats.

use serde::Serialize;
use thiserror::Error;

use crate::audit::{AuditEntry, AuditReport, AuditStatus, Claim, Named};
use crate::graph::{Graph, VertexSet};
use crate::hole::{arc_mask, positions_mask, HoleEmbedding, Unclassifiable};
use crate::uniform::{NamedSet, NearUniformPartition, PartitionError};

const L: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum C7Error {
    #[error("expected a hole of length 7, got {0}")]
    NotC7(usize),
    #[error(transparent)]
    Unclassifiable(#[from] Unclassifiable),
    #[error("audit failed on {} claim(s)", .0.failures().count())]
    AuditFailed(Box<AuditReport>),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("sets {0} and {1} are neither joined nor co-joined")]
    Mixed(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C7Partition {
    pub hole: HoleEmbedding,
    pub x: [VertexSet; L],
    pub y: [VertexSet; L],
    pub z: [VertexSet; L],
    pub w: VertexSet,
}

#[derive(Clone, Copy)]
enum Slot {
    X(usize),
    Y(usize),
    Z(usize),
    W,
}

fn slot_for(mask: u32) -> Option<Slot> {
    match mask.count_ones() {
        3 => (0..L).find_map(|i| {
            if mask == arc_mask(L, i, 3) {
                Some(Slot::X(i))
            } else if mask == positions_mask(L, &[i, i + 1, i + 4]) {
                Some(Slot::Y(i))
            } else {
                None
            }
        }),
        5 => (0..L).find(|&i| mask == arc_mask(L, i, 5)).map(Slot::Z),
        7 => Some(Slot::W),
        _ => None,
    }
}

pub fn build_c7_partition(g: &Graph, hole: &HoleEmbedding) -> Result<C7Partition, C7Error> {
    if hole.len() != L {
        return Err(C7Error::NotC7(hole.len()));
    }
    let mut x: [Vec<usize>; L] = Default::default();
    let mut y: [Vec<usize>; L] = Default::default();
    let mut z: [Vec<usize>; L] = Default::default();
    let mut w = Vec::new();
    let on_hole = hole.vertex_set();
    for v in g.vertices().filter(|&v| !on_hole.contains(v)) {
        match slot_for(hole.trace(g, v)) {
            Some(Slot::X(i)) => x[i].push(v),
            Some(Slot::Y(i)) => y[i].push(v),
            Some(Slot::Z(i)) => z[i].push(v),
            Some(Slot::W) => w.push(v),
            None => return Err(Unclassifiable::new(g, hole, v).into()),
        }
    }
    Ok(C7Partition {
        hole: hole.clone(),
        x: x.map(VertexSet::from),
        y: y.map(VertexSet::from),
        z: z.map(VertexSet::from),
        w: VertexSet::from(w),
    })
}

impl C7Partition {
    /// The nonempty sets of the partition of `G - C7`, named.
    pub fn parts(&self) -> Vec<NamedSet> {
        let mut out = Vec::new();
        for (tag, family) in [("X", &self.x), ("Y", &self.y), ("Z", &self.z)] {
            for (i, s) in family.iter().enumerate() {
                if !s.is_empty() {
                    out.push(NamedSet { name: format!("{tag}{}", i + 1), vertices: s.clone() });
                }
            }
        }
        if !self.w.is_empty() {
            out.push(NamedSet { name: "W".into(), vertices: self.w.clone() });
        }
        out
    }

    fn nx(&self, i: usize) -> Named<'_> {
        Named { name: format!("X{}", i % L + 1), set: &self.x[i % L] }
    }

    fn ny(&self, i: usize) -> Named<'_> {
        Named { name: format!("Y{}", i % L + 1), set: &self.y[i % L] }
    }

    fn nz(&self, i: usize) -> Named<'_> {
        Named { name: format!("Z{}", i % L + 1), set: &self.z[i % L] }
    }

    fn nw(&self) -> Named<'_> {
        Named { name: "W".into(), set: &self.w }
    }
}

/// Checks claims (a) through (o) on a partition built from `g`.
/// Claim id, description, join (or co-join), offsets and the other family.
type RelationClaim = (&'static str, &'static str, bool, &'static [usize], for<'a> fn(&'a C7Partition, usize) -> Named<'a>);

pub fn audit_c7(g: &Graph, p: &C7Partition) -> AuditReport {
    let mut entries = Vec::new();

    let mut c = Claim::new(g, "a", "every X_i, Y_i, Z_i and W is a clique");
    for i in 0..L {
        c.clique(&p.nx(i));
        c.clique(&p.ny(i));
        c.clique(&p.nz(i));
    }
    c.clique(&p.nw());
    entries.push(c.finish());

    let x_claims: [RelationClaim; 6] = [
        ("b", "X_i joined to X_{i+1} and X_{i+6}", true, &[1, 6], C7Partition::nx),
        ("c", "X_i co-joined to X_{i+2}, X_{i+3}, X_{i+4}, X_{i+5}", false, &[2, 3, 4, 5], C7Partition::nx),
        ("d", "X_i joined to Y_i, Y_{i+1}, Y_{i+4}", true, &[0, 1, 4], C7Partition::ny),
        ("e", "X_i co-joined to Y_{i+2}, Y_{i+3}, Y_{i+5}, Y_{i+6}", false, &[2, 3, 5, 6], C7Partition::ny),
        ("f", "X_i joined to Z_i, Z_{i+1}, Z_{i+4}, Z_{i+5}, Z_{i+6}", true, &[0, 1, 4, 5, 6], C7Partition::nz),
        ("g", "X_i co-joined to Z_{i+2}, Z_{i+3}", false, &[2, 3], C7Partition::nz),
    ];
    for (id, desc, join, offsets, other) in x_claims {
        let mut c = Claim::new(g, id, desc);
        for i in 0..L {
            for &d in offsets {
                let (a, b) = (p.nx(i), other(p, i + d));
                if join {
                    c.join(&a, &b);
                } else {
                    c.cojoin(&a, &b);
                }
            }
        }
        entries.push(c.finish());
    }

    let mut c = Claim::new(g, "h", "X_i joined to W");
    for i in 0..L {
        c.join(&p.nx(i), &p.nw());
    }
    entries.push(c.finish());

    let mut c = Claim::new(
        g,
        "i",
        "Y_i nonempty forces Y_{i+1}, Y_{i+2}, Y_{i+5}, Y_{i+6} empty and not both Y_{i+3}, Y_{i+4} nonempty",
    );
    for i in 0..L {
        for d in [1, 2, 5, 6] {
            c.not_all_nonempty(&[&p.ny(i), &p.ny(i + d)]);
        }
        c.not_all_nonempty(&[&p.ny(i), &p.ny(i + 3), &p.ny(i + 4)]);
    }
    entries.push(c.finish());
    entries.extend(y_partner_info(p));

    let mut c = Claim::new(g, "j", "Y_i joined to Y_{i+3} and Y_{i+4}");
    for i in 0..L {
        c.join(&p.ny(i), &p.ny(i + 3));
        c.join(&p.ny(i), &p.ny(i + 4));
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "k", "Y_i nonempty forces Z_{i+5} and Z_{i+6} empty");
    for i in 0..L {
        c.not_all_nonempty(&[&p.ny(i), &p.nz(i + 5)]);
        c.not_all_nonempty(&[&p.ny(i), &p.nz(i + 6)]);
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "l", "Y_i joined to W, Z_i, Z_{i+1}, Z_{i+3}, Z_{i+4}");
    for i in 0..L {
        c.join(&p.ny(i), &p.nw());
        for d in [0, 1, 3, 4] {
            c.join(&p.ny(i), &p.nz(i + d));
        }
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "m", "Y_i co-joined to Z_{i+2}");
    for i in 0..L {
        c.cojoin(&p.ny(i), &p.nz(i + 2));
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "n", "Z_i nonempty forces Z_{i+2} and Z_{i+5} empty; at most three Z_i nonempty");
    for i in 0..L {
        c.not_all_nonempty(&[&p.nz(i), &p.nz(i + 2)]);
        c.not_all_nonempty(&[&p.nz(i), &p.nz(i + 5)]);
    }
    let nonempty: Vec<Named<'_>> = (0..L).map(|i| p.nz(i)).filter(|z| !z.set.is_empty()).collect();
    if nonempty.len() > 3 {
        let four: Vec<&Named<'_>> = nonempty.iter().take(4).collect();
        c.not_all_nonempty(&four);
    }
    entries.push(c.finish());

    let mut c = Claim::new(g, "o", "Z_i joined to W, Z_{i+1}, Z_{i+3}, Z_{i+4}, Z_{i+6}");
    for i in 0..L {
        c.join(&p.nz(i), &p.nw());
        for d in [1, 3, 4, 6] {
            c.join(&p.nz(i), &p.nz(i + d));
        }
    }
    entries.push(c.finish());

    AuditReport { hole_length: L, entries }
}

/// Whether each nonempty `Y_i` has a nonempty partner among `Y_{i+3}`,
/// `Y_{i+4}`. Only the "not both" half is proven, so this is informational.
fn y_partner_info(p: &C7Partition) -> Option<AuditEntry> {
    let mut notes = Vec::new();
    for i in (0..L).filter(|&i| !p.y[i].is_empty()) {
        let partners: Vec<String> = [3, 4]
            .iter()
            .filter(|&&d| !p.y[(i + d) % L].is_empty())
            .map(|d| format!("Y{}", (i + d) % L + 1))
            .collect();
        let found = if partners.is_empty() { "none".to_string() } else { partners.join(",") };
        notes.push(format!("Y{}: partner {found}", i + 1));
    }
    if notes.is_empty() {
        return None;
    }
    Some(AuditEntry {
        claim: "i-partner".into(),
        description: "nonempty Y_i has a nonempty Y_{i+3} or Y_{i+4} (unproven half, not asserted)".into(),
        status: AuditStatus::Info,
        detail: Some(notes.join("; ")),
        witness: None,
    })
}

/// Partition of the whole graph: the nonempty sets of the C7 partition plus
/// each hole vertex as a singleton. Every pair of parts is a join or a
/// co-join, so the result carries no non-uniform pair.
pub fn c7_uniform_sets(g: &Graph, hole: &HoleEmbedding) -> Result<NearUniformPartition, C7Error> {
    let p = build_c7_partition(g, hole)?;
    let report = audit_c7(g, &p);
    if !report.passed() {
        return Err(C7Error::AuditFailed(Box::new(report)));
    }
    let mut sets: Vec<NamedSet> = (0..L)
        .map(|i| NamedSet { name: format!("h{}", i + 1), vertices: VertexSet::singleton(hole.at(i)) })
        .collect();
    sets.extend(p.parts());
    let partition = NearUniformPartition::new(g, sets)?;
    if let Some((i, j)) = partition.nonuniform_pair {
        return Err(C7Error::Mixed(partition.sets[i].name.clone(), partition.sets[j].name.clone()));
    }
    Ok(partition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::AuditWitness;
    use crate::detect::{class_report, Embedding, Pattern};
    use crate::graph::UniformStatus;

    fn c7_plus(neighbor_sets: &[&[usize]]) -> (Graph, HoleEmbedding) {
        let mut g = Graph::cycle(7);
        for ns in neighbor_sets {
            g = g.with_vertex(ns);
        }
        let h = HoleEmbedding::new(&g, (0..7).collect()).unwrap();
        (g, h)
    }

    #[test]
    fn classifies_by_trace() {
        let (g, h) = c7_plus(&[&[0, 1, 2]]);
        let p = build_c7_partition(&g, &h).unwrap();
        assert_eq!(p.x[0], VertexSet::from([7]));
        assert_eq!(p.parts().len(), 1);

        let (g, h) = c7_plus(&[&[0, 1, 4]]);
        assert_eq!(build_c7_partition(&g, &h).unwrap().y[0], VertexSet::from([7]));

        let (g, h) = c7_plus(&[&[2, 3, 4, 5, 6]]);
        assert_eq!(build_c7_partition(&g, &h).unwrap().z[2], VertexSet::from([7]));

        let (g, h) = c7_plus(&[&[0, 1, 2, 3, 4, 5, 6]]);
        assert_eq!(build_c7_partition(&g, &h).unwrap().w, VertexSet::from([7]));
    }

    #[test]
    fn two_vertex_is_unclassifiable_with_4k1_witness() {
        let (g, h) = c7_plus(&[&[0, 1]]);
        let err = build_c7_partition(&g, &h).unwrap_err();
        let C7Error::Unclassifiable(u) = err else { panic!("{err:?}") };
        assert_eq!(u.vertex, 7);
        assert_eq!(u.trace, vec![0, 1]);
        let w = u.witness.unwrap();
        assert_eq!(w.pattern, Pattern::FourK1);
        assert!(w.verify(&g));
        let mut vs = w.vertices.clone();
        vs.sort();
        assert_eq!(vs, vec![2, 4, 6, 7]);
    }

    #[test]
    fn every_illegal_trace_has_a_local_witness() {
        for mask in 0u32..128 {
            let ns = HoleEmbedding::trace_positions(mask);
            let (g, h) = c7_plus(&[&ns]);
            match build_c7_partition(&g, &h) {
                Ok(_) => assert!(slot_for(mask).is_some()),
                Err(C7Error::Unclassifiable(u)) => {
                    let w = u.witness.expect("forbidden pattern near the hole");
                    assert!(w.verify(&g) && w.vertices.contains(&7), "{mask:b}");
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn lone_x_vertex_passes() {
        let (g, h) = c7_plus(&[&[0, 1, 2]]);
        let r = audit_c7(&g, &build_c7_partition(&g, &h).unwrap());
        assert!(r.passed());
        assert_eq!(r.entries.iter().filter(|e| e.status == AuditStatus::Pass).count(), 15);
    }

    #[test]
    fn crossing_x_y_edge_fails_claim_e() {
        // X1 = {7} sees positions {0,1,2}; Y3 = {8} sees {2,3,6}
        let (g, h) = c7_plus(&[&[0, 1, 2], &[2, 3, 6, 7]]);
        let p = build_c7_partition(&g, &h).unwrap();
        assert_eq!(p.y[2], VertexSet::from([8]));
        let r = audit_c7(&g, &p);
        let e = r.entry("e").unwrap();
        assert_eq!(e.status, AuditStatus::Fail);
        let w = e.witness.clone().unwrap();
        assert_eq!(w, AuditWitness::UnexpectedEdge { u: 7, v: 8 });
        assert!(w.verify(&g));
        let c4 = Embedding { pattern: Pattern::C4, vertices: vec![7, 8, 6, 0] };
        assert!(c4.verify(&g));
        assert!(!class_report(&g).member);
    }

    #[test]
    fn emptiness_claim_witness() {
        // Y1 and Y2 both nonempty, no edge between them
        let (g, h) = c7_plus(&[&[0, 1, 4], &[1, 2, 5]]);
        let r = audit_c7(&g, &build_c7_partition(&g, &h).unwrap());
        let e = r.entry("i").unwrap();
        assert_eq!(e.status, AuditStatus::Fail);
        assert!(matches!(e.witness, Some(AuditWitness::Coexist { .. })));
    }

    #[test]
    fn uniform_sets_of_bare_c7() {
        let g = Graph::cycle(7);
        let h = HoleEmbedding::new(&g, (0..7).collect()).unwrap();
        let p = c7_uniform_sets(&g, &h).unwrap();
        assert_eq!(p.k(), 7);
        for i in 0..7 {
            for j in 0..7 {
                if i != j {
                    let expect = if g.has_edge(i, j) { UniformStatus::Join } else { UniformStatus::Cojoin };
                    assert_eq!(p.status(i, j), expect);
                }
            }
        }
    }

    #[test]
    fn uniform_sets_with_w() {
        let (g, h) = c7_plus(&[&[0, 1, 2, 3, 4, 5, 6]]);
        let p = c7_uniform_sets(&g, &h).unwrap();
        assert_eq!(p.k(), 8);
        assert!((0..7).all(|i| p.status(7, i) == UniformStatus::Join));
        p.verify(&g).unwrap();
    }
}
