//! Clique partitions in which every pair of parts is a join or a co-join,
//! except possibly one flagged pair.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{cross_status, non_adjacent_pair, Graph, GraphError, UniformStatus, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("part {0} is empty")]
    EmptyPart(String),
    #[error("vertex {0} lies in two parts")]
    Overlap(Vertex),
    #[error("part {part} is not a clique: {u} and {v} are non-adjacent")]
    NotClique { part: String, u: Vertex, v: Vertex },
    #[error("parts {first:?} and {second:?} are both non-uniform pairs")]
    TooManyMixed { first: (usize, usize), second: (usize, usize) },
    #[error("recorded relation between parts {0} and {1} does not match the graph")]
    StatusMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedSet {
    pub name: String,
    pub vertices: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearUniformPartition {
    pub sets: Vec<NamedSet>,
    /// `relation[i][j]` for `i != j`; the diagonal reads `Join` since every
    /// part is a clique.
    pub relation: Vec<Vec<UniformStatus>>,
    pub nonuniform_pair: Option<(usize, usize)>,
}

impl NearUniformPartition {
    /// Computes the relation matrix. At most one pair may be mixed.
    pub fn new(g: &Graph, sets: Vec<NamedSet>) -> Result<NearUniformPartition, PartitionError> {
        check_parts(g, &sets)?;
        let k = sets.len();
        let mut relation = vec![vec![UniformStatus::Join; k]; k];
        let mut nonuniform_pair = None;
        for i in 0..k {
            for j in i + 1..k {
                let s = cross_status(g, &sets[i].vertices, &sets[j].vertices);
                relation[i][j] = s;
                relation[j][i] = s;
                if s == UniformStatus::Mixed {
                    if let Some(first) = nonuniform_pair {
                        return Err(PartitionError::TooManyMixed { first, second: (i, j) });
                    }
                    nonuniform_pair = Some((i, j));
                }
            }
        }
        Ok(NearUniformPartition { sets, relation, nonuniform_pair })
    }

    /// Re-checks every stored fact against `g`.
    pub fn verify(&self, g: &Graph) -> Result<(), PartitionError> {
        check_parts(g, &self.sets)?;
        let k = self.k();
        let mut mixed = None;
        for i in 0..k {
            for j in i + 1..k {
                let s = cross_status(g, &self.sets[i].vertices, &self.sets[j].vertices);
                if s != self.relation[i][j] || s != self.relation[j][i] {
                    return Err(PartitionError::StatusMismatch(i, j));
                }
                if s == UniformStatus::Mixed {
                    if let Some(first) = mixed {
                        return Err(PartitionError::TooManyMixed { first, second: (i, j) });
                    }
                    mixed = Some((i, j));
                }
            }
        }
        if mixed != self.nonuniform_pair {
            let (i, j) = mixed.or(self.nonuniform_pair).unwrap();
            return Err(PartitionError::StatusMismatch(i, j));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn is_uniform(&self) -> bool {
        self.nonuniform_pair.is_none()
    }

    pub fn universe(&self) -> VertexSet {
        self.sets.iter().flat_map(|s| s.vertices.iter()).collect()
    }

    pub fn status(&self, i: usize, j: usize) -> UniformStatus {
        self.relation[i][j]
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> NearUniformPartition {
        NearUniformPartition {
            sets: self
                .sets
                .iter()
                .map(|s| NamedSet { name: s.name.clone(), vertices: s.vertices.iter().map(&f).collect() })
                .collect(),
            relation: self.relation.clone(),
            nonuniform_pair: self.nonuniform_pair,
        }
    }
}

fn check_parts(g: &Graph, sets: &[NamedSet]) -> Result<(), PartitionError> {
    let mut seen = vec![false; g.n()];
    for s in sets {
        g.check_set(&s.vertices)?;
        if s.vertices.is_empty() {
            return Err(PartitionError::EmptyPart(s.name.clone()));
        }
        for v in s.vertices.iter() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(PartitionError::Overlap(v));
            }
        }
        if let Some((u, v)) = non_adjacent_pair(g, &s.vertices) {
            return Err(PartitionError::NotClique { part: s.name.clone(), u, v });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(name: &str, vs: &[Vertex]) -> NamedSet {
        NamedSet { name: name.into(), vertices: vs.iter().copied().collect() }
    }

    #[test]
    fn uniform_cycle_singletons() {
        let c = Graph::cycle(5);
        let sets = (0..5).map(|i| named(&format!("h{i}"), &[i])).collect();
        let p = NearUniformPartition::new(&c, sets).unwrap();
        assert!(p.is_uniform());
        assert_eq!(p.status(0, 1), UniformStatus::Join);
        assert_eq!(p.status(0, 2), UniformStatus::Cojoin);
        p.verify(&c).unwrap();
    }

    #[test]
    fn rejects_bad_parts() {
        let p4 = Graph::path(4);
        assert!(matches!(
            NearUniformPartition::new(&p4, vec![named("a", &[0, 2])]),
            Err(PartitionError::NotClique { .. })
        ));
        assert_eq!(
            NearUniformPartition::new(&p4, vec![named("a", &[0, 1]), named("b", &[1])]),
            Err(PartitionError::Overlap(1))
        );
        assert!(matches!(
            NearUniformPartition::new(&p4, vec![named("a", &[])]),
            Err(PartitionError::EmptyPart(_))
        ));
        let p = NearUniformPartition::new(&p4, vec![named("a", &[0, 1]), named("b", &[2, 3])]).unwrap();
        assert_eq!(p.nonuniform_pair, Some((0, 1)));
        let k = Graph::path(6);
        let err = NearUniformPartition::new(&k, vec![named("a", &[0, 1]), named("b", &[2, 3]), named("c", &[4, 5])]);
        assert!(matches!(err, Err(PartitionError::TooManyMixed { .. })));
    }

    #[test]
    fn verify_catches_tampering() {
        let g = Graph::path(3);
        let mut p = NearUniformPartition::new(&g, vec![named("a", &[0]), named("b", &[1]), named("c", &[2])]).unwrap();
        p.relation[0][2] = UniformStatus::Join;
        assert_eq!(p.verify(&g), Err(PartitionError::StatusMismatch(0, 2)));
    }
}
