//! Times local clustering on synthetic hypergraphs of growing size.
//!
//!     cargo run --release --example planted_bench

use std::time::Instant;

use hyperppr::clustering::{local_clustering, LocalParams};
use hyperppr::generate::sparse_hypergraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hyperppr::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [1_000, 3_000, 10_000] {
        let h = sparse_hypergraph(&mut rng, n, n * 5 / 2, 6);
        let start = Instant::now();
        let r = local_clustering(&h, 0, &LocalParams::new(0.5))?;
        println!(
            "{}  phi={:.4} |S|={} {:.2}s",
            hyperppr::hypergraph::stats(&h),
            r.conductance,
            r.set.len(),
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
