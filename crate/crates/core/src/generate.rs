//! Synthetic instances: random graphs and hypergraphs, and planted partitions.
//!
//! Every generator is a pure function of the RNG state, so a seeded
//! `ChaCha8Rng` reproduces the same instance on every platform.

use rand::seq::index::sample;
use rand::Rng;

use crate::hypergraph::{connectivity, Hyperedge, Hypergraph, VertexSubset};

/// Connected weighted graph: a random recursive tree plus each remaining pair
/// independently with probability `p`. Weights are uniform in [0.5, 2).
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Hypergraph {
    assert!(n >= 2);
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        adj[u][v] = true;
        edges.push(Hyperedge::new(rng.random_range(0.5..2.0), vec![u, v]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !adj[u][v] && rng.random_bool(p) {
                edges.push(Hyperedge::new(rng.random_range(0.5..2.0), vec![u, v]));
            }
        }
    }
    Hypergraph::new(n, edges).expect("tree covers every vertex")
}

/// Connected hypergraph: a weight-1 path 0–1–…–(n−1) plus `m` random edges
/// of size 2..=`max_size` (capped at n) with weights in {1, 2, 3}.
pub fn random_hypergraph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, max_size: usize) -> Hypergraph {
    assert!(n >= 2 && max_size >= 2);
    let mut edges: Vec<Hyperedge> = (1..n).map(|v| Hyperedge::new(1.0, vec![v - 1, v])).collect();
    for _ in 0..m {
        let k = rng.random_range(2..=max_size.min(n));
        let members = sample(rng, n, k).into_vec();
        edges.push(Hyperedge::new(rng.random_range(1..=3) as f64, members));
    }
    Hypergraph::new(n, edges).expect("path covers every vertex")
}

/// Random hypergraph without a backbone: `m` edges of size 2..=`max_size`,
/// unit weights, isolated vertices dropped. Not necessarily connected.
pub fn sparse_hypergraph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, max_size: usize) -> Hypergraph {
    let edges = (0..m)
        .map(|_| {
            let k = rng.random_range(2..=max_size.min(n));
            Hyperedge::new(1.0, sample(rng, n, k).into_vec())
        })
        .collect();
    Hypergraph::new_dropping_isolated(n, edges).expect("valid edges").0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedParams {
    pub clusters: usize,
    pub cluster_size: usize,
    /// Unit-weight edges placed inside each cluster.
    pub internal_edges: usize,
    pub edge_size: usize,
    /// Unit-weight edges with members in two consecutive clusters.
    pub crossing_edges: usize,
}

impl Default for PlantedParams {
    fn default() -> Self {
        Self { clusters: 2, cluster_size: 16, internal_edges: 40, edge_size: 3, crossing_edges: 1 }
    }
}

#[derive(Debug, Clone)]
pub struct Planted {
    pub hypergraph: Hypergraph,
    /// Cluster i is the vertex block [i·size, (i+1)·size).
    pub clusters: Vec<VertexSubset>,
}

/// Planted partition: each cluster receives random internal edges (resampled
/// until the cluster is connected), then crossing edges join cluster i to
/// cluster i+1 (mod the number of clusters). A crossing edge takes one
/// member from the next cluster and the rest from the current one.
pub fn planted_partition<R: Rng + ?Sized>(rng: &mut R, p: &PlantedParams) -> Planted {
    assert!(p.clusters >= 1 && p.edge_size >= 2 && p.edge_size <= p.cluster_size);
    let size = p.cluster_size;
    let n = p.clusters * size;
    let mut edges = Vec::new();
    for c in 0..p.clusters {
        let offset = c * size;
        loop {
            let block: Vec<Hyperedge> =
                (0..p.internal_edges).map(|_| Hyperedge::new(1.0, sample(rng, size, p.edge_size).into_vec())).collect();
            if let Ok(sub) = Hypergraph::new(size, block.clone()) {
                if connectivity(&sub).is_connected() {
                    edges.extend(
                        block
                            .into_iter()
                            .map(|e| Hyperedge::new(1.0, e.members().iter().map(|&v| v + offset).collect::<Vec<_>>())),
                    );
                    break;
                }
            }
        }
    }
    if p.clusters > 1 {
        for i in 0..p.crossing_edges {
            let c = i % p.clusters;
            let next = (c + 1) % p.clusters;
            let mut members: Vec<usize> =
                sample(rng, size, p.edge_size - 1).into_iter().map(|v| v + c * size).collect();
            members.push(rng.random_range(0..size) + next * size);
            edges.push(Hyperedge::new(1.0, members));
        }
    }
    let hypergraph = Hypergraph::new(n, edges).expect("clusters are connected blocks");
    let clusters = (0..p.clusters).map(|c| VertexSubset::new(n, c * size..(c + 1) * size).expect("in range")).collect();
    Planted { hypergraph, clusters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::measure;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic_and_connected() {
        let a = random_hypergraph(&mut ChaCha8Rng::seed_from_u64(3), 20, 15, 6);
        let b = random_hypergraph(&mut ChaCha8Rng::seed_from_u64(3), 20, 15, 6);
        assert_eq!(a.edges(), b.edges());
        assert!(connectivity(&a).is_connected());
        let g = random_graph(&mut ChaCha8Rng::seed_from_u64(3), 12, 0.2);
        assert!(g.is_graph());
        assert!(connectivity(&g).is_connected());
    }

    #[test]
    fn planted_fixture_shape() {
        let p = planted_partition(&mut ChaCha8Rng::seed_from_u64(1), &PlantedParams::default());
        let h = &p.hypergraph;
        assert_eq!((h.n(), h.m()), (32, 81));
        assert!(connectivity(h).is_connected());
        let m = measure(h, &p.clusters[0]).unwrap();
        assert_eq!(m.cut, 1.0);
        assert_eq!(m.volume, 122.0);
    }
}
