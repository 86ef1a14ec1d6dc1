//! Global clustering on small random hypergraphs, compared with exhaustive
//! search over all subsets.

use hyperppr::clustering::{global_clustering, LocalParams, Seeds};
use hyperppr::generate::random_hypergraph;
use hyperppr::verify::brute_force_conductance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> hyperppr::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let params = LocalParams::new(0.5);
    let mut matched = 0;
    let trials = 10;
    for i in 0..trials {
        let n = rng.random_range(6..=12);
        let h = random_hypergraph(&mut rng, n, n, 4);
        let found = global_clustering(&h, &params, &Seeds::All, 0)?;
        let (best, phi) = brute_force_conductance(&h, None, None)?;
        let hit = found.conductance <= phi * (1.0 + 1e-12);
        matched += hit as usize;
        println!(
            "#{i} n={n:>2} global phi={:.5} {:?}  optimum phi={:.5} {:?}",
            found.conductance,
            found.set.members(),
            phi,
            best.members()
        );
    }
    println!("optimum reached on {matched}/{trials}");
    Ok(())
}
