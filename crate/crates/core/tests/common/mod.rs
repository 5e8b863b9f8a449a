//! Graph sources shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use equimatch::families::{enumerate_all, FamilyParams};
use equimatch::graph::is_isomorphic_small;
use equimatch::Graph;

/// Number of vertex pairs on `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The labeled graph on `n` vertices whose edge set is given by the bits of
/// `mask` over pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn labeled_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Every labeled graph on `n` vertices.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    (0..1u64 << pair_count(n)).map(move |m| labeled_graph(n, m))
}

/// Sorted per-vertex (degree, sorted neighbor degrees).
type Invariant = Vec<(usize, Vec<usize>)>;

/// Isomorphism invariant of `g`.
fn invariant(g: &Graph) -> Invariant {
    let mut v: Vec<_> = (0..g.order())
        .map(|u| {
            let mut nd: Vec<usize> = g.neighbors(u).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(u), nd)
        })
        .collect();
    v.sort_unstable();
    v
}

/// One representative of every isomorphism class on exactly `n` vertices,
/// for `n` up to 8. Built by adding a vertex with every possible
/// neighborhood to each class on `n - 1` vertices.
pub fn unlabeled_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "unlabeled generation is meant for tiny orders");
    let mut level = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut buckets: HashMap<(usize, Invariant), Vec<Graph>> = HashMap::new();
        let mut next = Vec::new();
        for g in &level {
            for s in 0..1u32 << (k - 1) {
                let mut edges: Vec<(usize, usize)> = g.edges().collect();
                edges.extend((0..k - 1).filter(|&v| s >> v & 1 == 1).map(|v| (v, k - 1)));
                let h = Graph::from_edges(k, edges).unwrap();
                let bucket = buckets.entry((h.size(), invariant(&h))).or_default();
                if bucket.iter().all(|b| is_isomorphic_small(b, &h).unwrap().is_none()) {
                    bucket.push(h.clone());
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// Every family member with at most `max` vertices.
pub fn family_corpus(max: usize) -> Vec<(FamilyParams, Graph)> {
    enumerate_all(max).unwrap()
}

/// Whether `g` is `K_{a,a}` for some `a >= 0`.
pub fn is_balanced_complete_bipartite(g: &Graph) -> bool {
    if g.order() == 0 {
        return true;
    }
    match g.bipartition() {
        Some((a, b)) => a.len() == b.len() && g.size() == a.len() * b.len(),
        None => false,
    }
}
