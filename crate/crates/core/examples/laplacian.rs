//! The hypergraph Laplacian at a point: which vertices each edge selects,
//! the resulting Laplacian vector and the graph it induces.

use hyperppr::laplacian::{apply_laplacian, induced_graph, quadratic_form, select_subgradient};
use hyperppr::{Hyperedge, Hypergraph};

fn main() -> hyperppr::Result<()> {
    let h = Hypergraph::new(
        5,
        vec![Hyperedge::new(1.0, vec![0, 1, 2]), Hyperedge::new(2.0, vec![2, 3, 4]), Hyperedge::new(1.0, vec![0, 4])],
    )?;
    // z = x/d, with a tie between vertices 3 and 4
    let z = [1.0, 0.5, 0.0, -0.5, -0.5];
    let sel = select_subgradient(&h, &z, 0.0);
    println!("{sel:?}");
    println!("L_H z = {:?}", apply_laplacian(&h, &z, false, 0.0));
    println!("<z, L_H z> = {}", quadratic_form(&h, &z, 0.0));
    let g = induced_graph(&h, &z, 0.0);
    println!("induced graph degrees {:?} (hypergraph {:?})", g.degrees(), h.degrees());
    Ok(())
}
