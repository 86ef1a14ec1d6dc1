//! Personalized PageRank on the path 0–1–2 with α = 1/2 from vertex 0.
//! The exact answer is (17/24, 1/4, 1/24); each solver is printed next to it.

use hyperppr::diffusion::{euler_ppr, exact_ppr, graph_ppr_exact, graph_ppr_power, ExactParams, PprParams};
use hyperppr::hypergraph::indicator;
use hyperppr::{Hyperedge, Hypergraph};

fn main() -> hyperppr::Result<()> {
    let h = Hypergraph::new(3, vec![Hyperedge::new(1.0, vec![0, 1]), Hyperedge::new(1.0, vec![1, 2])])?;
    let s = indicator(3, 0);
    let alpha = 0.5;

    let euler = euler_ppr(&h, &s, &PprParams::converged(alpha, 0.5, 1e-8))?;
    let exact = exact_ppr(&h, &s, alpha, &ExactParams::default())?;
    let rows = [
        ("closed form", vec![17.0 / 24.0, 0.25, 1.0 / 24.0]),
        ("euler", euler.vector.clone()),
        ("power", graph_ppr_power(&h, &s, alpha, 1e-12, 100_000)?),
        ("dense solve", graph_ppr_exact(&h, &s, alpha)?),
        ("dual ascent", exact.result.vector.clone()),
    ];
    for (name, x) in &rows {
        println!("{name:>12}: {:.12} {:.12} {:.12}", x[0], x[1], x[2]);
    }
    println!("euler took {} steps, residual {:.2e}", euler.iterations, euler.final_residual);
    Ok(())
}
