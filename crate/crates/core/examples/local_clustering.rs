//! Recovers a planted cluster from a single seed vertex.
//!
//!     cargo run --release --example local_clustering -- [rng-seed]

use hyperppr::clustering::{alpha_candidates, local_clustering, LocalParams};
use hyperppr::generate::{planted_partition, PlantedParams};
use hyperppr::hypergraph::{interior, measure};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hyperppr::Result<()> {
    let rng_seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let planted = planted_partition(&mut rng, &PlantedParams::default());
    let h = &planted.hypergraph;
    let truth = &planted.clusters[1];
    println!("{}", hyperppr::hypergraph::stats(h));
    println!("planted cluster: {:?} phi={:.5}", truth.members(), measure(h, truth)?.conductance);

    let params = LocalParams::new(0.5);
    println!("{} alpha candidates", alpha_candidates(h, params.epsilon)?.len());
    for &v in interior(h, truth).members().iter().take(4) {
        let r = local_clustering(h, v, &params)?;
        println!("seed {v:>2}: alpha={:.4} phi={:.5} exact match={}", r.alpha, r.conductance, r.set == *truth);
    }
    Ok(())
}
