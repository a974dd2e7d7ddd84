//! DIMACS `.col` graphs: `c` comments, one `p edge <n> <m>` line and
//! `e <u> <v>` edge lines with 1-based vertices.

use std::fmt::Write;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing problem line")]
    MissingProblem,
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("problem line declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    Duplicate { line: usize, u: usize, v: usize },
}

pub fn parse_dimacs(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let malformed = |message: &str| DimacsError::Malformed { line, message: message.to_string() };
        let num = |s: &str| s.parse::<usize>().map_err(|_| malformed(&format!("bad number {s:?}")));
        match fields.as_slice() {
            [] => {}
            ["c", ..] => {}
            ["p", "edge" | "col", n, m] => {
                if header.is_some() {
                    return Err(malformed("second problem line"));
                }
                header = Some((num(n)?, num(m)?));
            }
            ["e", u, v] => {
                let (n, _) = header.ok_or(DimacsError::MissingProblem)?;
                let (u, v) = (num(u)?, num(v)?);
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(DimacsError::OutOfRange { line, vertex: x, n });
                    }
                }
                if u == v {
                    return Err(DimacsError::SelfLoop { line, vertex: u });
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(DimacsError::Duplicate { line, u, v });
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(malformed(&format!("unrecognised line {raw:?}"))),
        }
    }
    let (n, m) = header.ok_or(DimacsError::MissingProblem)?;
    if m != edges.len() {
        return Err(DimacsError::EdgeCount { declared: m, found: edges.len() });
    }
    Ok(Graph::new(n, &edges).expect("edges validated"))
}

/// Normalised text: the problem line, then edges sorted with `u < v`.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_dimacs("p edge 2 1\ne 1 2\n").unwrap(), Graph::complete(2));
        assert_eq!(parse_dimacs("p edge 2 1\ne 1 1\n"), Err(DimacsError::SelfLoop { line: 2, vertex: 1 }));
        assert!(matches!(parse_dimacs("p edge 2 2\ne 1 2\n"), Err(DimacsError::EdgeCount { declared: 2, found: 1 })));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 1 3\n"), Err(DimacsError::OutOfRange { .. })));
        assert!(matches!(parse_dimacs("e 1 2\n"), Err(DimacsError::MissingProblem)));
        assert!(matches!(parse_dimacs("p edge 2 1\nx\n"), Err(DimacsError::Malformed { line: 2, .. })));
        assert!(matches!(parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n"), Err(DimacsError::Duplicate { .. })));
    }

    #[test]
    fn round_trip_normalises() {
        let text = "c a comment\np edge 4 3\ne 3 2\ne 1 2\n\ne 4 3\n";
        let g = parse_dimacs(text).unwrap();
        let norm = write_dimacs(&g);
        assert_eq!(norm, "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
        assert_eq!(write_dimacs(&parse_dimacs(&norm).unwrap()), norm);
    }
}
