//! Runs the lemma checkers on a planted cluster and prints one JSON report
//! per inequality, followed by a small instance where the upper PPR bound on
//! non-seed vertices fails.

use hyperppr::generate::{planted_partition, PlantedParams};
use hyperppr::hypergraph::{interior, measure};
use hyperppr::verify::{check_leak_global, check_leak_local, check_ppr_axioms, check_sufficient_conditions};
use hyperppr::{Hyperedge, Hypergraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hyperppr::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let planted = planted_partition(&mut rng, &PlantedParams::default());
    let h = &planted.hypergraph;
    let c = &planted.clusters[1];
    let v = interior(h, c).members()[0];
    println!("cluster phi = {:.6}, seed {v}", measure(h, c)?.conductance);

    for alpha in [0.1, 0.25, 0.5] {
        println!("alpha = {alpha}");
        let local = check_leak_local(h, c, v, alpha)?;
        println!("  {}\n  {}", local.leak.to_json(), local.ppr_cuts.to_json());
        for r in check_leak_global(h, c, alpha)?.reports() {
            println!("  {}", r.to_json());
        }
        let sc = check_sufficient_conditions(h, alpha, Some(c))?;
        println!("  {}\n  {}", sc.criterion1.to_json(), sc.criterion2.to_json());
    }

    // a leaf hanging off the seed of a star-plus-clique graph
    let mut edges = vec![Hyperedge::new(1.0, vec![0, 1])];
    for u in 2..7 {
        edges.push(Hyperedge::new(1.0, vec![1, u]));
        for w in u + 1..7 {
            edges.push(Hyperedge::new(1.0, vec![u, w]));
        }
    }
    let g = Hypergraph::new(7, edges)?;
    let ax = check_ppr_axioms(&g, 0.3, 1)?;
    for r in ax.reports() {
        println!("{}", r.to_json());
    }
    Ok(())
}
