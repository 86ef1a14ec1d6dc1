//! The hypergraph method next to clique- and star-expansion baselines on the
//! same planted instance and seed. Conductance is always measured in the
//! hypergraph.

use hyperppr::clustering::{
    baseline_expansion_clustering, local_clustering, BaselineParams, ExpansionMode, LocalParams,
};
use hyperppr::expansion::clique_pair_count;
use hyperppr::generate::{planted_partition, PlantedParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hyperppr::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let params = PlantedParams { clusters: 3, cluster_size: 20, internal_edges: 30, edge_size: 5, crossing_edges: 6 };
    let planted = planted_partition(&mut rng, &params);
    let h = &planted.hypergraph;
    println!("{}  clique pairs={}", hyperppr::hypergraph::stats(h), clique_pair_count(h));

    let seed = 25;
    let ours = local_clustering(h, seed, &LocalParams::new(0.5))?;
    let clique = baseline_expansion_clustering(h, seed, &BaselineParams::new(ExpansionMode::Clique, 0.5))?;
    let star = baseline_expansion_clustering(h, seed, &BaselineParams::new(ExpansionMode::Star, 0.5))?;
    for r in [&ours, &clique, &star] {
        println!("{}", r.to_json());
    }
    Ok(())
}
