//! Graphs in the class: seeded random growth, C7 templates and exhaustive
//! small enumeration.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detect::{self, find_induced_through, Embedding, Pattern};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Require {
    C5,
    C7,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOptions {
    /// Largest accepted `n`.
    pub cap: usize,
    /// Proposals tried for each new vertex before restarting.
    pub attempts_per_vertex: usize,
    pub restarts: usize,
    /// Also keep the graph free of induced C5-twins.
    pub forbid_c5_twin: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions { cap: 16, attempts_per_vertex: 200, restarts: 20, forbid_c5_twin: false }
    }
}

/// A random graph in the class on `n` vertices, deterministic in `seed`.
pub fn random_in_class(n: usize, seed: u64, require: Option<Require>) -> Option<Graph> {
    random_in_class_with(n, seed, require, &GenOptions::default())
}

pub fn random_in_class_with(n: usize, seed: u64, require: Option<Require>, opts: &GenOptions) -> Option<Graph> {
    if n > opts.cap {
        return None;
    }
    let start = match require {
        Some(Require::C5) => Graph::cycle(5),
        Some(Require::C7) => Graph::cycle(7),
        None => Graph::empty(n.min(1)),
    };
    if start.n() > n {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forbidden: Vec<Pattern> = if opts.forbid_c5_twin {
        vec![Pattern::FourK1, Pattern::C4, Pattern::C6, Pattern::C5Twin]
    } else {
        Pattern::FORBIDDEN.to_vec()
    };
    'restart: for _ in 0..opts.restarts {
        let mut g = start.clone();
        while g.n() < n {
            let mut grown = None;
            for _ in 0..opts.attempts_per_vertex {
                let nbrs = propose(&g, &mut rng);
                let h = g.with_vertex(&nbrs);
                let v = h.n() - 1;
                if forbidden.iter().all(|&p| find_induced_through(&h, p, v).is_none()) {
                    grown = Some(h);
                    break;
                }
            }
            match grown {
                Some(h) => g = h,
                None => continue 'restart,
            }
        }
        let mut perm: Vec<Vertex> = (0..n).collect();
        perm.shuffle(&mut rng);
        return Some(g.permuted(&perm));
    }
    None
}

/// Neighbours for a new vertex: either a dense random subset, or a near
/// copy of some vertex's closed neighbourhood.
fn propose(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    let n = g.n();
    if n > 0 && rng.gen_bool(0.3) {
        let u = rng.gen_range(0..n);
        let flip = 1.0 / n as f64;
        (0..n).filter(|&x| (x == u || g.has_edge(u, x)) != rng.gen_bool(flip)).collect()
    } else {
        let p = rng.gen_range(0.4..0.7);
        (0..n).filter(|_| rng.gen_bool(p)).collect()
    }
}

/// Sizes of the sets around a C7; index `i` is hole offset `i` (0-based).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateSpec {
    pub x: [usize; 7],
    pub y: [usize; 7],
    pub z: [usize; 7],
    pub w: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("invalid template: {0}")]
    InvalidSpec(String),
    #[error("template is outside the class")]
    Unrealizable { spec: Box<TemplateSpec>, witness: Option<Embedding> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    X,
    Y,
    Z,
    W,
}

/// Hole positions seen by a member of a set.
fn hole_trace(kind: Kind, i: usize) -> Vec<usize> {
    let offsets: &[usize] = match kind {
        Kind::X => &[0, 1, 2],
        Kind::Y => &[0, 1, 4],
        Kind::Z => &[0, 1, 2, 3, 4],
        Kind::W => &[0, 1, 2, 3, 4, 5, 6],
    };
    offsets.iter().map(|d| (i + d) % 7).collect()
}

/// Forced adjacency between members of two distinct sets. `None` for
/// pairs of sets that cannot both be nonempty.
fn forced(a: (Kind, usize), b: (Kind, usize)) -> Option<bool> {
    use Kind::*;
    let d = |from: usize, to: usize| (to + 7 - from) % 7;
    match (a, b) {
        ((W, _), _) | (_, (W, _)) => Some(true),
        ((X, i), (X, j)) => Some(matches!(d(i, j), 1 | 6)),
        ((X, i), (Y, j)) => Some(matches!(d(i, j), 0 | 1 | 4)),
        ((X, i), (Z, j)) => Some(!matches!(d(i, j), 2 | 3)),
        ((Y, i), (Y, j)) => matches!(d(i, j), 3 | 4).then_some(true),
        ((Y, i), (Z, j)) => match d(i, j) {
            0 | 1 | 3 | 4 => Some(true),
            2 => Some(false),
            _ => None,
        },
        ((Z, i), (Z, j)) => matches!(d(i, j), 1 | 3 | 4 | 6).then_some(true),
        ((Y, _) | (Z, _), (X, _)) | ((Z, _), (Y, _)) => forced(b, a),
    }
}

impl TemplateSpec {
    fn sets(&self) -> Vec<(Kind, usize, usize)> {
        let mut out = Vec::new();
        for (kind, sizes) in [(Kind::X, &self.x), (Kind::Y, &self.y), (Kind::Z, &self.z)] {
            for (i, &k) in sizes.iter().enumerate() {
                if k > 0 {
                    out.push((kind, i, k));
                }
            }
        }
        if self.w > 0 {
            out.push((Kind::W, 0, self.w));
        }
        out
    }

    pub fn order(&self) -> usize {
        7 + self.sets().iter().map(|s| s.2).sum::<usize>()
    }

    /// The emptiness constraints that hold around every C7 in the class.
    pub fn validate(&self) -> Result<(), TemplateError> {
        let bad = |m: String| Err(TemplateError::InvalidSpec(m));
        let (y, z) = (&self.y, &self.z);
        for i in 0..7 {
            let at = |s: &[usize; 7], d: usize| s[(i + d) % 7] > 0;
            if y[i] > 0 {
                for d in [1, 2, 5, 6] {
                    if at(y, d) {
                        return bad(format!("Y{} and Y{} both nonempty", i + 1, (i + d) % 7 + 1));
                    }
                }
                if at(y, 3) && at(y, 4) {
                    return bad(format!("Y{} with both Y{} and Y{}", i + 1, (i + 3) % 7 + 1, (i + 4) % 7 + 1));
                }
                for d in [5, 6] {
                    if at(z, d) {
                        return bad(format!("Y{} and Z{} both nonempty", i + 1, (i + d) % 7 + 1));
                    }
                }
            }
            if z[i] > 0 {
                for d in [2, 5] {
                    if at(z, d) {
                        return bad(format!("Z{} and Z{} both nonempty", i + 1, (i + d) % 7 + 1));
                    }
                }
            }
        }
        if z.iter().filter(|&&k| k > 0).count() > 3 {
            return bad("more than three Z sets nonempty".into());
        }
        Ok(())
    }
}

/// Builds the C7 on vertices `0..7` followed by the sets in the order
/// X1..X7, Y1..Y7, Z1..Z7, W, with every forced adjacency.
pub fn c7_template(spec: &TemplateSpec) -> Result<Graph, TemplateError> {
    spec.validate()?;
    let mut owner: Vec<Option<(Kind, usize)>> = vec![None; 7];
    for (kind, i, k) in spec.sets() {
        owner.extend(std::iter::repeat_n(Some((kind, i)), k));
    }
    let g = Graph::from_fn(owner.len(), |u, v| match (owner[u], owner[v]) {
        (None, None) => (u + 1) % 7 == v || (v + 1) % 7 == u,
        (None, Some((kind, i))) => hole_trace(kind, i).contains(&u),
        (Some((kind, i)), None) => hole_trace(kind, i).contains(&v),
        (Some(a), Some(b)) if a == b => true,
        (Some(a), Some(b)) => forced(a, b).expect("validated spec"),
    });
    match detect::forbidden_witness(&g) {
        None => Ok(g),
        Some(w) => Err(TemplateError::Unrealizable { spec: Box::new(spec.clone()), witness: Some(w) }),
    }
}

fn slot(spec: &mut TemplateSpec, kind: u32, i: usize) -> &mut usize {
    match kind {
        0..=3 => &mut spec.x[i],
        4..=5 => &mut spec.y[i],
        6..=8 => &mut spec.z[i],
        _ => &mut spec.w,
    }
}

/// Draws template specs until one is realizable with at most `max_n`
/// vertices.
pub fn random_c7_template(seed: u64, max_n: usize) -> Option<(TemplateSpec, Graph)> {
    if max_n < 7 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let mut spec = TemplateSpec::default();
        let budget = rng.gen_range(0..=max_n - 7);
        for _ in 0..budget {
            let i = rng.gen_range(0..7);
            let kind = rng.gen_range(0..10);
            *slot(&mut spec, kind, i) += 1;
            if spec.validate().is_err() {
                *slot(&mut spec, kind, i) -= 1;
            }
        }
        if let Ok(g) = c7_template(&spec) {
            return Some((spec, g));
        }
    }
    None
}

pub const ENUMERATION_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumeration is limited to n <= {ENUMERATION_LIMIT}, got {0}")]
pub struct TooLarge(pub usize);

/// Bit index of the pair `u < v` in an edge mask.
fn pair_bit(u: usize, v: usize) -> usize {
    v * (v - 1) / 2 + u
}

fn mask_graph(n: usize, mask: u32) -> Graph {
    Graph::from_fn(n, |u, v| mask >> pair_bit(u.min(v), u.max(v)) & 1 == 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least edge mask over all relabellings.
fn canonical(n: usize, mask: u32, perms: &[Vec<usize>]) -> u32 {
    let edges: Vec<(usize, usize)> =
        (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).filter(|&(u, v)| mask >> pair_bit(u, v) & 1 == 1).collect();
    perms
        .iter()
        .map(|p| {
            edges.iter().fold(0u32, |m, &(u, v)| {
                let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                m | 1 << pair_bit(a, b)
            })
        })
        .min()
        .unwrap_or(0)
}

/// Every graph in the class on `n` labelled vertices, or one per
/// isomorphism class when `dedup` is set.
pub fn enumerate_small(n: usize, dedup: bool) -> Result<Vec<Graph>, TooLarge> {
    if n > ENUMERATION_LIMIT {
        return Err(TooLarge(n));
    }
    let mut level: Vec<u32> = vec![0];
    for k in 1..n {
        let perms = permutations(k + 1);
        let mut next = BTreeSet::new();
        let mut labelled = Vec::new();
        for &mask in &level {
            let g = mask_graph(k, mask);
            for nbrs in 0u32..1 << k {
                let list: Vec<Vertex> = (0..k).filter(|&u| nbrs >> u & 1 == 1).collect();
                let h = g.with_vertex(&list);
                if Pattern::FORBIDDEN.iter().all(|&p| find_induced_through(&h, p, k).is_none()) {
                    let m = mask | nbrs << pair_bit(0, k);
                    if dedup {
                        next.insert(canonical(k + 1, m, &perms));
                    } else {
                        labelled.push(m);
                    }
                }
            }
        }
        level = if dedup { next.into_iter().collect() } else { labelled };
    }
    if n == 0 {
        return Ok(vec![Graph::empty(0)]);
    }
    Ok(level.into_iter().map(|m| mask_graph(n, m)).collect())
}
