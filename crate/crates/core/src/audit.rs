//! Audit reports: one entry per structural claim, with a concrete witness
//! for every failure.

use serde::Serialize;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::ids;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    Pass,
    Fail,
    /// Recorded for information only, never a failure.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuditWitness {
    /// Two vertices that should be adjacent but are not.
    MissingEdge {
        #[serde(with = "ids::one_based")]
        u: Vertex,
        #[serde(with = "ids::one_based")]
        v: Vertex,
    },
    /// Two vertices that should not be adjacent but are.
    UnexpectedEdge {
        #[serde(with = "ids::one_based")]
        u: Vertex,
        #[serde(with = "ids::one_based")]
        v: Vertex,
    },
    /// One member from each of several sets that may not all be nonempty.
    Coexist {
        sets: Vec<String>,
        #[serde(with = "ids::one_based_vec")]
        vertices: Vec<Vertex>,
    },
}

impl AuditWitness {
    /// Re-checks the adjacency facts the witness asserts.
    pub fn verify(&self, g: &Graph) -> bool {
        match *self {
            AuditWitness::MissingEdge { u, v } => u != v && u < g.n() && v < g.n() && !g.has_edge(u, v),
            AuditWitness::UnexpectedEdge { u, v } => u < g.n() && v < g.n() && g.has_edge(u, v),
            AuditWitness::Coexist { ref sets, ref vertices } => {
                sets.len() == vertices.len()
                    && vertices.iter().all(|&v| v < g.n())
                    && VertexSet::from(vertices.clone()).len() == vertices.len()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub claim: String,
    pub description: String,
    pub status: AuditStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AuditWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub hole_length: usize,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != AuditStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| e.status == AuditStatus::Fail)
    }

    pub fn entry(&self, claim: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.claim == claim)
    }
}

/// A named vertex set of a hole partition.
pub(crate) struct Named<'a> {
    pub name: String,
    pub set: &'a VertexSet,
}

/// Accumulates checks for one claim; keeps the first failure.
pub(crate) struct Claim<'g> {
    g: &'g Graph,
    claim: &'static str,
    description: &'static str,
    failure: Option<(String, AuditWitness)>,
}

impl<'g> Claim<'g> {
    pub fn new(g: &'g Graph, claim: &'static str, description: &'static str) -> Self {
        Claim { g, claim, description, failure: None }
    }

    fn fail(&mut self, detail: String, w: AuditWitness) {
        if self.failure.is_none() {
            self.failure = Some((detail, w));
        }
    }

    pub fn clique(&mut self, s: &Named<'_>) {
        if let Some((u, v)) = crate::graph::non_adjacent_pair(self.g, s.set) {
            self.fail(format!("{} is not a clique", s.name), AuditWitness::MissingEdge { u, v });
        }
    }

    pub fn join(&mut self, a: &Named<'_>, b: &Named<'_>) {
        for u in a.set.iter() {
            if let Some(v) = b.set.iter().find(|&v| !self.g.has_edge(u, v)) {
                let detail = format!("{} is not joined to {}", a.name, b.name);
                return self.fail(detail, AuditWitness::MissingEdge { u, v });
            }
        }
    }

    pub fn cojoin(&mut self, a: &Named<'_>, b: &Named<'_>) {
        for u in a.set.iter() {
            if let Some(v) = b.set.iter().find(|&v| self.g.has_edge(u, v)) {
                let detail = format!("{} is not co-joined to {}", a.name, b.name);
                return self.fail(detail, AuditWitness::UnexpectedEdge { u, v });
            }
        }
    }

    /// Fails when every listed set is nonempty.
    pub fn not_all_nonempty(&mut self, sets: &[&Named<'_>]) {
        if sets.iter().all(|s| !s.set.is_empty()) {
            let names: Vec<String> = sets.iter().map(|s| s.name.clone()).collect();
            let detail = format!("{} are all nonempty", names.join(", "));
            let vertices = sets.iter().map(|s| s.set.first().unwrap()).collect();
            self.fail(detail, AuditWitness::Coexist { sets: names, vertices });
        }
    }

    pub fn finish(self) -> AuditEntry {
        let (status, detail, witness) = match self.failure {
            Some((d, w)) => (AuditStatus::Fail, Some(d), Some(w)),
            None => (AuditStatus::Pass, None, None),
        };
        AuditEntry {
            claim: self.claim.to_string(),
            description: self.description.to_string(),
            status,
            detail,
            witness,
        }
    }
}
