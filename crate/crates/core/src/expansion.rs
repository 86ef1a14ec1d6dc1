//! Graph surrogates of a hypergraph: clique and star expansions.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::hypergraph::{Hyperedge, Hypergraph, VertexSubset};

/// Number of pairs the clique expansion generates before merging.
pub fn clique_pair_count(h: &Hypergraph) -> u64 {
    h.edges()
        .iter()
        .map(|e| {
            let k = e.len() as u64;
            k * k.saturating_sub(1) / 2
        })
        .sum()
}

/// Replaces every hyperedge by the complete graph on its members, with
/// weight w(e) per pair (`normalized = false`) or w(e) / C(|e|, 2).
/// Parallel pairs are merged by summing their weights.
///
/// Fails with `IsolatedVertex` when a vertex belongs to singleton edges only.
pub fn clique_expansion(h: &Hypergraph, normalized: bool) -> Result<Hypergraph> {
    let mut pairs: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for e in h.edges() {
        let k = e.len();
        if k < 2 {
            continue;
        }
        let w = if normalized { e.weight() / (k * (k - 1) / 2) as f64 } else { e.weight() };
        let m = e.members();
        for i in 0..k {
            for j in i + 1..k {
                *pairs.entry((m[i], m[j])).or_insert(0.0) += w;
            }
        }
    }
    let edges = pairs.into_iter().map(|((u, v), w)| Hyperedge::new(w, vec![u, v])).collect();
    Hypergraph::new(h.n(), edges)
}

/// Adds a hub vertex `n + i` for edge `i`, joined to each member with
/// weight w(e) (`normalized = false`) or w(e) / |e|. The returned mask marks
/// the original vertices.
pub fn star_expansion(h: &Hypergraph, normalized: bool) -> (Hypergraph, VertexSubset) {
    let n = h.n();
    let mut edges = Vec::with_capacity(h.total_size());
    for (i, e) in h.edges().iter().enumerate() {
        let w = if normalized { e.weight() / e.len() as f64 } else { e.weight() };
        for &u in e.members() {
            edges.push(Hyperedge::new(w, vec![u, n + i]));
        }
    }
    let g = Hypergraph::new(n + h.m(), edges).expect("every hub and every original vertex has an edge");
    let mask = VertexSubset::new(n + h.m(), 0..n).expect("in range");
    (g, mask)
}
