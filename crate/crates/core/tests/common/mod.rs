//! Seeded graph corpora shared by the integration tests.
#![allow(dead_code)]

use holeforge::detect::is_member;
use holeforge::generate::{random_c7_template, random_in_class, random_in_class_with, GenOptions, Require};
use holeforge::{Graph, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn shuffle(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<Vertex> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.permuted(&perm)
}

/// In-class graphs with a C7 and at most `max_n` vertices, alternating
/// between templates and random growth.
pub fn c7_corpus(count: usize, max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        seed += 1;
        let mut r = rng(seed);
        let g = if seed.is_multiple_of(2) {
            random_c7_template(seed, max_n).map(|(_, g)| shuffle(&g, &mut r))
        } else {
            random_in_class(r.gen_range(7..=max_n), seed, Some(Require::C7))
        };
        out.extend(g);
    }
    out
}

pub fn c5_corpus(count: usize, max_n: usize) -> Vec<Graph> {
    (1..)
        .filter_map(|seed| {
            let n = rng(seed).gen_range(5..=max_n);
            random_in_class(n, seed, Some(Require::C5))
        })
        .take(count)
        .collect()
}

pub fn c5_twin_free_corpus(count: usize, max_n: usize) -> Vec<Graph> {
    let opts = GenOptions { forbid_c5_twin: true, ..GenOptions::default() };
    (1..)
        .filter_map(|seed| {
            let n = rng(seed ^ 0x5eed).gen_range(5..=max_n);
            random_in_class_with(n, seed, Some(Require::C5), &opts)
        })
        .take(count)
        .collect()
}

/// Identifies the clique `k1` of `g1` with the clique `k2` of `g2`
/// (matched in order). Vertices of `g1` keep their ids.
pub fn glue(g1: &Graph, k1: &[Vertex], g2: &Graph, k2: &[Vertex]) -> Graph {
    assert_eq!(k1.len(), k2.len());
    let mut id = vec![usize::MAX; g2.n()];
    for (&a, &b) in k1.iter().zip(k2) {
        id[b] = a;
    }
    let mut next = g1.n();
    for slot in id.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut edges: Vec<(Vertex, Vertex)> = g1.edges().collect();
    for (u, v) in g2.edges() {
        let (a, b) = (id[u], id[v]);
        if a >= g1.n() || b >= g1.n() {
            edges.push((a, b));
        }
    }
    Graph::new(next, &edges).unwrap()
}

/// A clique of `g` of size `k` containing a random vertex, if one is found
/// greedily.
pub fn some_clique(g: &Graph, k: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vertex>> {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut clique: Vec<Vertex> = Vec::new();
    for v in order {
        if clique.len() == k {
            break;
        }
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    (clique.len() == k).then_some(clique)
}

/// Two in-class graphs glued on a clique, retried until the result is in
/// the class and has at most `max_n` vertices.
pub fn glued_in_class(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    loop {
        let n1 = r.gen_range(3..=max_n - 2);
        let k = r.gen_range(1..=2usize);
        let n2 = r.gen_range(k + 1..=(max_n + k - n1).max(k + 1));
        let req = |r: &mut ChaCha8Rng| match r.gen_range(0..3) {
            0 => Some(Require::C5),
            1 => Some(Require::C7),
            _ => None,
        };
        let (q1, q2) = (req(&mut r), req(&mut r));
        let s1: u64 = r.gen();
        let s2: u64 = r.gen();
        let (Some(g1), Some(g2)) = (random_in_class(n1, s1, q1), random_in_class(n2, s2, q2)) else {
            continue;
        };
        let (Some(k1), Some(k2)) = (some_clique(&g1, k, &mut r), some_clique(&g2, k, &mut r)) else {
            continue;
        };
        let g = glue(&g1, &k1, &g2, &k2);
        if g.n() <= max_n && is_member(&g) {
            return shuffle(&g, &mut r);
        }
    }
}
