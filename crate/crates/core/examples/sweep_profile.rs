//! Sweep cuts of a PPR vector: the per-prefix table, the best prefix under a
//! volume cap, and the Lovász–Simonovits curve.

use hyperppr::diffusion::{exact_ppr, ExactParams};
use hyperppr::generate::{planted_partition, PlantedParams};
use hyperppr::hypergraph::indicator;
use hyperppr::sweep::{ls_curve, sweep_profile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hyperppr::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let h = planted_partition(&mut rng, &PlantedParams::default()).hypergraph;
    let p = exact_ppr(&h, &indicator(h.n(), 20), 0.05, &ExactParams::default())?.result.vector;

    let prof = sweep_profile(&h, &p)?;
    print!("{}", prof.to_csv());
    for mu in [0.25, 0.5] {
        let best = prof.best(mu)?;
        println!("mu={mu}: l_mu={} best j={} phi={:.5} vol={}", best.ell, best.j, best.conductance, best.volume);
    }
    let ls = ls_curve(&h, &p)?;
    let half = h.volume() / 2.0;
    println!("LS curve at vol/2 = {half}: {:.6}", ls.eval(half));
    Ok(())
}
