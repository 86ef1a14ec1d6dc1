use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

use super::check_alpha;

/// Largest n accepted by [`graph_ppr_exact`].
pub const DENSE_LIMIT: usize = 4096;

fn check_graph(g: &Hypergraph) -> Result<()> {
    match g.edges().iter().position(|e| e.len() != 2) {
        Some(id) => Err(Error::NotAGraph(id)),
        None => Ok(()),
    }
}

/// Fixed point of x ← αs + (1−α)·W x with the lazy walk W = (I + A D⁻¹)/2,
/// started from the uniform vector. Stops once ‖x − x_prev‖₁ ≤ `tol`.
pub fn graph_ppr_power(g: &Hypergraph, s: &[f64], alpha: f64, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    check_graph(g)?;
    g.check_len(s.len())?;
    check_alpha(alpha)?;
    let n = g.n();
    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iter {
        // next = αs + (1−α)(x + A D⁻¹ x)/2
        next.copy_from_slice(&x);
        for e in g.edges() {
            let (u, v) = (e.members()[0], e.members()[1]);
            next[u] += e.weight() * x[v] / g.degree(v);
            next[v] += e.weight() * x[u] / g.degree(u);
        }
        let mut diff = 0.0;
        for v in 0..n {
            let y = alpha * s[v] + (1.0 - alpha) * 0.5 * next[v];
            diff += (y - x[v]).abs();
            next[v] = y;
        }
        std::mem::swap(&mut x, &mut next);
        if diff <= tol {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence(max_iter))
}

/// Solves (I + ((1−α)/(2α))·L D⁻¹)·p = s by LU factorization.
pub fn graph_ppr_exact(g: &Hypergraph, s: &[f64], alpha: f64) -> Result<Vec<f64>> {
    check_graph(g)?;
    g.check_len(s.len())?;
    check_alpha(alpha)?;
    let n = g.n();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    let lambda = (1.0 - alpha) / (2.0 * alpha);
    let mut m = DMatrix::<f64>::identity(n, n);
    for e in g.edges() {
        let (u, v) = (e.members()[0], e.members()[1]);
        let w = lambda * e.weight();
        // column j of L D⁻¹ is L's column j scaled by 1/d_j
        m[(u, u)] += w / g.degree(u);
        m[(v, v)] += w / g.degree(v);
        m[(u, v)] -= w / g.degree(v);
        m[(v, u)] -= w / g.degree(u);
    }
    let rhs = DVector::from_column_slice(s);
    let sol = m.lu().solve(&rhs).ok_or(Error::SingularSystem)?;
    Ok(sol.iter().copied().collect())
}
