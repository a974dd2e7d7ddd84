use serde::Serialize;
use thiserror::Error;

use crate::detect::{self, Embedding, Pattern};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::ids;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoleError {
    #[error("hole length must be 5 or 7, got {0}")]
    Length(usize),
    #[error("vertices {0:?} do not form an induced cycle in cyclic order")]
    NotInduced(Vec<Vertex>),
}

/// An induced C5 or C7 in cyclic order. Hole position `i` is
/// `vertices[i]`; positions are taken modulo the length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HoleEmbedding {
    #[serde(with = "ids::one_based_vec")]
    vertices: Vec<Vertex>,
}

impl HoleEmbedding {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<HoleEmbedding, HoleError> {
        let len = vertices.len();
        let pattern = match len {
            5 => Pattern::C5,
            7 => Pattern::C7,
            _ => return Err(HoleError::Length(len)),
        };
        let e = Embedding { pattern, vertices };
        if !e.verify(g) {
            return Err(HoleError::NotInduced(e.vertices));
        }
        Ok(HoleEmbedding { vertices: e.vertices })
    }

    pub fn from_embedding(g: &Graph, e: &Embedding) -> Result<HoleEmbedding, HoleError> {
        HoleEmbedding::new(g, e.vertices.clone())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex at hole position `i` (mod length).
    pub fn at(&self, i: usize) -> Vertex {
        self.vertices[i % self.len()]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }

    /// Bitmask over hole positions of the neighbours of `v`.
    pub fn trace(&self, g: &Graph, v: Vertex) -> u32 {
        self.vertices
            .iter()
            .enumerate()
            .filter(|&(_, &h)| g.has_edge(v, h))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Hole positions listed by a trace mask.
    pub fn trace_positions(mask: u32) -> Vec<usize> {
        (0..32).filter(|i| mask >> i & 1 == 1).collect()
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> HoleEmbedding {
        HoleEmbedding { vertices: self.vertices.iter().map(|&v| f(v)).collect() }
    }
}

/// The `index`-th induced hole of length 5 or 7 in detection order.
pub fn find_hole(g: &Graph, len: usize, index: usize) -> Result<Option<HoleEmbedding>, HoleError> {
    let p = match len {
        5 => Pattern::C5,
        7 => Pattern::C7,
        _ => return Err(HoleError::Length(len)),
    };
    Ok(detect::nth_induced(g, p, index).map(|e| HoleEmbedding { vertices: e.vertices }))
}

/// Raised when a vertex's neighbourhood on the hole fits none of the
/// partition's sets; the graph is then outside the class and `witness`
/// holds a forbidden pattern inside the hole plus that vertex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("vertex {vertex} has unclassifiable hole trace {trace:?}")]
pub struct Unclassifiable {
    pub vertex: Vertex,
    /// Hole positions adjacent to `vertex`.
    pub trace: Vec<usize>,
    pub witness: Option<Embedding>,
}

impl Unclassifiable {
    pub(crate) fn new(g: &Graph, hole: &HoleEmbedding, vertex: Vertex) -> Unclassifiable {
        let mut local: Vec<Vertex> = hole.vertices.clone();
        local.push(vertex);
        let sub = crate::graph::induced_subgraph(g, &local.iter().copied().collect())
            .expect("hole and vertex are in range");
        let witness = detect::forbidden_witness(&sub.graph).map(|e| e.map(|v| sub.to_parent(v)));
        Unclassifiable {
            vertex,
            trace: HoleEmbedding::trace_positions(hole.trace(g, vertex)),
            witness,
        }
    }
}

/// Mask of `count` consecutive hole positions starting at `start`.
pub(crate) fn arc_mask(len: usize, start: usize, count: usize) -> u32 {
    (0..count).fold(0, |m, j| m | 1 << ((start + j) % len))
}

pub(crate) fn positions_mask(len: usize, positions: &[usize]) -> u32 {
    positions.iter().fold(0, |m, &p| m | 1 << (p % len))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_holes() {
        let c7 = Graph::cycle(7);
        let h = HoleEmbedding::new(&c7, (0..7).collect()).unwrap();
        assert_eq!(h.at(9), 2);
        assert!(matches!(
            HoleEmbedding::new(&c7, vec![0, 2, 1, 3, 4, 5, 6]),
            Err(HoleError::NotInduced(_))
        ));
        assert_eq!(HoleEmbedding::new(&Graph::cycle(6), (0..6).collect()), Err(HoleError::Length(6)));
    }

    #[test]
    fn traces() {
        let g = Graph::cycle(5).with_vertex(&[1, 3]);
        let h = HoleEmbedding::new(&g, (0..5).collect()).unwrap();
        assert_eq!(h.trace(&g, 5), 0b01010);
        assert_eq!(HoleEmbedding::trace_positions(0b01010), vec![1, 3]);
        assert_eq!(arc_mask(5, 4, 2), 0b10001);
        assert_eq!(positions_mask(7, &[1, 2, 5]), 0b0100110);
    }
}
