//! Vertex ids are 0-based in memory and 1-based in every external format
//! (DIMACS, expression text, JSON reports). These serializers do the shift.

use serde::ser::{SerializeSeq, Serializer};

use crate::graph::Vertex;

pub mod one_based {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Vertex, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(*v as u64 + 1)
    }
}

pub mod one_based_vec {
    use super::*;

    pub fn serialize<S: Serializer>(vs: &[Vertex], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(vs.len()))?;
        for v in vs {
            seq.serialize_element(&(*v as u64 + 1))?;
        }
        seq.end()
    }
}
