//! Brute-force cross-checks on small graphs.

use std::collections::{BTreeSet, HashSet};

use holeforge::color::{exact_chromatic, max_clique};
use holeforge::decomp::{decompose, find_clique_cutset};
use holeforge::detect::{class_report, count_induced, find_induced, Pattern};
use holeforge::generate::enumerate_small;
use holeforge::graph::{induced_subgraph, is_clique};
use holeforge::{Graph, Vertex, VertexSet};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let edges: Vec<(Vertex, Vertex)> = pairs(n).into_iter().zip(bits).filter(|p| p.1).map(|p| p.0).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

/// Vertex pairs `(u, v)` with `u < v`, ordered by `v` then `u`.
fn pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Vertex subsets inducing a copy of `p`, found by trying every bijection.
fn naive_count(g: &Graph, p: Pattern) -> usize {
    let t = p.template();
    let k = t.n();
    subsets(g.n())
        .filter(|s| s.len() == k)
        .filter(|s| {
            permutations(s.as_slice())
                .iter()
                .any(|m| (0..k).all(|i| (0..k).all(|j| i == j || t.has_edge(i, j) == g.has_edge(m[i], m[j]))))
        })
        .count()
}

fn naive_member(g: &Graph) -> bool {
    Pattern::FORBIDDEN.iter().all(|&p| naive_count(g, p) == 0)
}

fn naive_has_clique_cutset(g: &Graph) -> bool {
    subsets(g.n()).any(|s| is_clique(g, &s).unwrap() && g.components_avoiding(&s).len() > 1)
}

fn naive_omega(g: &Graph) -> usize {
    subsets(g.n()).filter(|s| is_clique(g, s).unwrap()).map(|s| s.len()).max().unwrap()
}

fn colorable(g: &Graph, k: usize) -> bool {
    fn go(g: &Graph, k: usize, c: &mut Vec<usize>) -> bool {
        let v = c.len();
        if v == g.n() {
            return true;
        }
        // colors beyond the largest used so far are interchangeable
        let limit = (c.iter().max().map_or(0, |m| m + 1) + 1).min(k);
        for col in 0..limit {
            if (0..v).all(|u| !g.has_edge(u, v) || c[u] != col) {
                c.push(col);
                if go(g, k, c) {
                    return true;
                }
                c.pop();
            }
        }
        false
    }
    go(g, k, &mut Vec::new())
}

fn naive_chi(g: &Graph) -> usize {
    (0..=g.n()).find(|&k| colorable(g, k)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn detection_matches_naive_counts(g in graph_strategy(7)) {
        for p in Pattern::ALL {
            if p.order() <= g.n() {
                prop_assert_eq!(count_induced(&g, p), naive_count(&g, p), "{}", p);
            }
        }
        prop_assert_eq!(class_report(&g).member, naive_member(&g));
    }

    #[test]
    fn found_embeddings_verify(g in graph_strategy(8)) {
        for p in Pattern::ALL {
            if let Some(e) = find_induced(&g, p) {
                prop_assert!(e.verify(&g));
            }
        }
    }

    #[test]
    fn cutset_matches_naive(g in graph_strategy(8)) {
        let found = find_clique_cutset(&g);
        prop_assert_eq!(found.is_some(), naive_has_clique_cutset(&g));
        if let Some(s) = found {
            prop_assert!(is_clique(&g, &s.cutset).unwrap());
            prop_assert_eq!(s.v1.union(&s.v2), g.all_vertices());
            prop_assert_eq!(s.v1.intersection(&s.v2), s.cutset.clone());
            let (a, b) = (s.v1.difference(&s.cutset), s.v2.difference(&s.cutset));
            prop_assert!(!a.is_empty() && !b.is_empty());
            prop_assert!(a.iter().all(|u| b.iter().all(|v| !g.has_edge(u, v))));
        }
    }

    #[test]
    fn decomposition_is_valid(g in graph_strategy(9)) {
        let t = decompose(&g);
        prop_assert_eq!(t.verify(&g), Ok(()));
        for atom in t.atoms() {
            let a = induced_subgraph(&g, atom).unwrap().graph;
            prop_assert!(!naive_has_clique_cutset(&a));
        }
        if g.is_connected() && g.n() >= 2 {
            prop_assert!(t.atom_count() < g.n());
        }
    }

    #[test]
    fn clique_and_chromatic_match_naive(g in graph_strategy(8)) {
        let w = max_clique(&g);
        prop_assert!(is_clique(&g, &w.vertices).unwrap());
        prop_assert_eq!(w.size, naive_omega(&g));
        let (chi, c) = exact_chromatic(&g);
        prop_assert!(c.is_proper(&g));
        prop_assert_eq!(c.count(), chi);
        prop_assert_eq!(chi, naive_chi(&g));
    }
}

#[test]
fn enumeration_matches_naive_filter() {
    for n in 1..=6 {
        let all = pairs(n);
        let labelled = (0u32..1 << all.len())
            .filter(|&m| {
                let edges: Vec<(Vertex, Vertex)> =
                    all.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e).collect();
                naive_member(&Graph::new(n, &edges).unwrap())
            })
            .count();
        assert_eq!(enumerate_small(n, false).unwrap().len(), labelled, "n = {n}");
    }
}

fn automorphisms(g: &Graph) -> usize {
    let vs: Vec<Vertex> = g.vertices().collect();
    permutations(&vs)
        .iter()
        .filter(|p| g.edges().all(|(u, v)| g.has_edge(p[u], p[v])))
        .count()
}

#[test]
fn enumeration_counts() {
    let labelled: Vec<usize> = (1..=6).map(|n| enumerate_small(n, false).unwrap().len()).collect();
    let unlabelled: Vec<Vec<Graph>> = (1..=6).map(|n| enumerate_small(n, true).unwrap()).collect();
    // n = 4: all 64 labelled graphs except 4K1 and the three labelled C4s;
    // all 11 unlabelled ones except 4K1 and C4
    assert_eq!(labelled[3], 60);
    assert_eq!(unlabelled[3].len(), 9);
    // regression values, confirmed by the naive filter and the orbit sums below
    assert_eq!(labelled, vec![1, 2, 8, 60, 768, 15016]);
    assert_eq!(unlabelled.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 4, 9, 23, 70]);
    // each isomorphism class contributes n!/|Aut| labelled graphs
    for (i, reps) in unlabelled.iter().enumerate() {
        let n = i + 1;
        let fact: usize = (1..=n).product();
        let orbit_sum: usize = reps.iter().map(|g| fact / automorphisms(g)).sum();
        assert_eq!(orbit_sum, labelled[i], "n = {n}");
        assert!(reps.iter().all(|g| class_report(g).member));
    }
}

/// Label classes are interchangeable, so a labelling is stored with labels
/// renamed in order of first appearance. Unused vertices carry `NONE`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    vertices: u32,
    edges: u32,
    labels: Vec<u8>,
}

const NONE: u8 = u8::MAX;

fn normalise(vertices: u32, edges: u32, mut labels: Vec<u8>) -> State {
    let mut names: Vec<u8> = Vec::new();
    for l in labels.iter_mut().filter(|l| **l != NONE) {
        let i = names.iter().position(|x| x == l).unwrap_or_else(|| {
            names.push(*l);
            names.len() - 1
        });
        *l = i as u8;
    }
    State { vertices, edges, labels }
}

/// Whether `g` has an expression with at most `k` labels, by closing the
/// set of buildable labelled subgraphs of `g` under the four operations.
fn buildable(g: &Graph, k: u8) -> bool {
    let n = g.n();
    let pair = |u: usize, v: usize| {
        let (a, b) = (u.min(v), u.max(v));
        b * (b - 1) / 2 + a
    };
    let target: u32 = g.edges().fold(0, |m, (u, v)| m | 1 << pair(u, v));
    let full = (1u32 << n) - 1;
    // same-labelled vertices receive the same edges from now on
    let viable = |s: &State| {
        (0..n).all(|u| {
            (0..n).all(|v| {
                u == v
                    || s.labels[u] == NONE
                    || s.labels[u] != s.labels[v]
                    || (0..n).filter(|&w| w != u && w != v).all(|w| {
                        if s.labels[w] == NONE {
                            g.has_edge(u, w) == g.has_edge(v, w)
                        } else {
                            let pending = g.has_edge(u, w) && s.edges >> pair(u, w) & 1 == 0;
                            !pending || g.has_edge(v, w)
                        }
                    })
            })
        })
    };
    let mut seen: HashSet<State> = HashSet::new();
    let mut all: Vec<State> = Vec::new();
    let mut frontier: Vec<State> = Vec::new();
    let push = |s: State, seen: &mut HashSet<State>, all: &mut Vec<State>, frontier: &mut Vec<State>| {
        if viable(&s) && seen.insert(s.clone()) {
            all.push(s.clone());
            frontier.push(s);
        }
    };
    for v in 0..n {
        let mut labels = vec![NONE; n];
        labels[v] = 0;
        push(normalise(1 << v, 0, labels), &mut seen, &mut all, &mut frontier);
    }
    while let Some(s) = frontier.pop() {
        if s.vertices == full && s.edges == target {
            return true;
        }
        let mut next = Vec::new();
        let used: BTreeSet<u8> = s.labels.iter().copied().filter(|&l| l != NONE).collect();
        for &a in &used {
            for b in 0..k {
                if a == b {
                    continue;
                }
                let mut labels = s.labels.clone();
                for l in labels.iter_mut().filter(|l| **l == a) {
                    *l = b;
                }
                next.push(normalise(s.vertices, s.edges, labels));
                if used.contains(&b) {
                    let mut edges = s.edges;
                    for u in 0..n {
                        for v in 0..n {
                            if s.labels[u] == a && s.labels[v] == b {
                                edges |= 1 << pair(u, v);
                            }
                        }
                    }
                    if edges & !target == 0 {
                        next.push(normalise(s.vertices, edges, s.labels.clone()));
                    }
                }
            }
        }
        for t in &all {
            if t.vertices & s.vertices != 0 {
                continue;
            }
            let t_used: Vec<u8> = t.labels.iter().copied().filter(|&l| l != NONE).collect::<BTreeSet<_>>().into_iter().collect();
            for map in label_maps(t_used.len(), k) {
                let labels: Vec<u8> = (0..n)
                    .map(|v| match (s.labels[v], t.labels[v]) {
                        (NONE, NONE) => NONE,
                        (l, NONE) => l,
                        (_, l) => map[t_used.iter().position(|&x| x == l).unwrap()],
                    })
                    .collect();
                next.push(normalise(s.vertices | t.vertices, s.edges | t.edges, labels));
            }
        }
        for t in next {
            push(t, &mut seen, &mut all, &mut frontier);
        }
    }
    false
}

/// Injective maps from `m` labels into `0..k`.
fn label_maps(m: usize, k: u8) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u8>| {
                (0..k).filter(|x| !p.contains(x)).map(|x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

#[test]
fn exhaustive_width_search() {
    // graphs of width at most two are exactly the P4-free ones
    assert!(buildable(&Graph::complete(3), 2));
    assert!(buildable(&Graph::complete(2).join(&Graph::empty(2)), 2));
    assert!(!buildable(&Graph::path(4), 2));
    assert!(buildable(&Graph::path(4), 3));
}

#[test]
fn c5_needs_exactly_three_labels() {
    let c5 = Graph::cycle(5);
    assert!(!buildable(&c5, 2));
    assert!(buildable(&c5, 3));
}
